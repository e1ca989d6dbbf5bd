#include "decolab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "decolab/format.hpp"

namespace decolab {

namespace {

constexpr double kCoherenceFloor = 1e-12;

/// x * conj(x0) / |x0|^2, written out so that x == x0 gives exactly 1.
Complex normalized(Complex x, Complex x0) {
  const double n = x0.real() * x0.real() + x0.imag() * x0.imag();
  return {(x.real() * x0.real() + x.imag() * x0.imag()) / n, (x.imag() * x0.real() - x.real() * x0.imag()) / n};
}

double sample_variance(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

/// Standard error of |mean| from the spread of samples along the mean's direction.
double stderr_of_modulus(const Eigen::Ref<const Eigen::VectorXcd>& samples, Complex mean) {
  const auto n = static_cast<std::size_t>(samples.size());
  if (n < 2) return 0.0;
  std::vector<double> proj(n);
  const double m = std::abs(mean);
  if (m > kCoherenceFloor) {
    const Complex u = std::conj(mean) / m;
    for (std::size_t r = 0; r < n; ++r) proj[r] = (u * samples(static_cast<Eigen::Index>(r))).real();
    return std::sqrt(sample_variance(proj, m) / static_cast<double>(n));
  }
  std::vector<double> im(n);
  for (std::size_t r = 0; r < n; ++r) {
    proj[r] = samples(static_cast<Eigen::Index>(r)).real();
    im[r] = samples(static_cast<Eigen::Index>(r)).imag();
  }
  const double v = 0.5 * (sample_variance(proj, mean.real()) + sample_variance(im, mean.imag()));
  return std::sqrt(v / static_cast<double>(n));
}

std::string label_hz(const char* prefix, double f) { return std::string(prefix) + shortest(f) + "Hz"; }

}  // namespace

std::vector<double> uniform_grid(double horizon, std::size_t points) {
  if (points < 2) throw InvalidArgument("grid_points must be at least 2");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = horizon * static_cast<double>(i) / static_cast<double>(points - 1);
  g.back() = horizon;
  return g;
}

void Scenario::validate() const {
  model.validate();
  if (kicks) kicks->validate();
  if (kondo) kondo->validate();
  if (dd) dd->validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("T must be positive");
  if (realizations < 1) throw InvalidArgument("realizations must be at least 1");
  if (grid.empty()) throw InvalidArgument("grid must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 0.0 || grid.back() > horizon) {
    throw InvalidArgument("grid must be sorted within [0, T]");
  }
  if (kicks && kicks->gamma * horizon < 1.0) throw InvalidArgument("gamma * T must be at least 1");
  if (dd && dd->freq * horizon < 1.0) throw InvalidArgument("dd_freq * T must be at least 1");
  if (kondo && !(horizon > kondo->delta_max)) throw InvalidArgument("T must exceed kondo_delta_max");
}

DensityMatrix2 Scenario::initial_system_state() const {
  return system_frame == Frame::PlusMinus ? hadamard_frame(rho_s0) : rho_s0;
}

std::vector<Timeline> realization_timelines(const Scenario& s, std::uint64_t index) {
  std::vector<Timeline> out;
  if (s.kicks) {
    RandomStream rng(derive_seed(s.seed, index, StreamKind::Kicks));
    out.push_back(sample_kick_timeline(*s.kicks, s.horizon, rng));
  }
  if (s.kondo) {
    RandomStream rng(derive_seed(s.seed, index, StreamKind::Kondo));
    out.push_back(sample_kondo_timeline(*s.kondo, s.horizon, rng));
  }
  if (s.dd) out.push_back(dd_timeline(*s.dd, s.horizon));
  return out;
}

const std::vector<Complex>& EnsembleResult::f01() const {
  if (!has_f01_) throw ObservableUnavailable("f01 is undefined: the initial system state has no coherence");
  return f01_;
}

const std::vector<double>& EnsembleResult::abs_f01() const {
  if (!has_f01_) throw ObservableUnavailable("f01 is undefined: the initial system state has no coherence");
  return abs_f01_;
}

const std::vector<double>& EnsembleResult::stderr_abs_f01() const {
  if (!has_f01_) throw ObservableUnavailable("f01 is undefined: the initial system state has no coherence");
  return stderr_abs_f01_;
}

const Eigen::MatrixXcd& EnsembleResult::f01_samples() const {
  if (!has_f01_) throw ObservableUnavailable("f01 is undefined: the initial system state has no coherence");
  return f01_samples_;
}

EnsembleResult average(const Scenario& s, const EnsembleOptions& opts) {
  s.validate();
  const DensityMatrix2 rho_s0 = s.initial_system_state();
  const std::size_t R = s.realizations;
  const std::size_t G = s.grid.size();

  std::vector<std::vector<Mat2>> per_realization(R);
  unsigned workers = opts.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.workers;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, R));

  auto work = [&](unsigned w) {
    for (std::size_t r = w; r < R; r += workers) {
      const auto timelines = realization_timelines(s, r);
      auto traj = run_realization(s.model, timelines, rho_s0, s.rho_e0, s.grid, s.horizon);
      auto& slot = per_realization[r];
      slot.reserve(G);
      for (const auto& st : traj.states) slot.push_back(st.matrix());
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  EnsembleResult out;
  out.times = s.grid;
  out.realizations = R;
  out.horizon = s.horizon;
  out.mean_rho.assign(G, Mat2::Zero());
  out.rho00.resize(G);
  out.rho11.resize(G);
  out.stderr_rho00.resize(G);
  out.rho00_samples_.resize(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(G));

  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t g = 0; g < G; ++g) out.mean_rho[g] += per_realization[r][g];
  const double inv_r = 1.0 / static_cast<double>(R);
  for (auto& m : out.mean_rho) m *= inv_r;

  std::vector<double> col(R);
  for (std::size_t g = 0; g < G; ++g) {
    for (std::size_t r = 0; r < R; ++r) {
      col[r] = per_realization[r][g](0, 0).real();
      out.rho00_samples_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) = col[r];
    }
    out.rho00[g] = out.mean_rho[g](0, 0).real();
    out.rho11[g] = out.mean_rho[g](1, 1).real();
    out.stderr_rho00[g] = std::sqrt(sample_variance(col, out.rho00[g]) * inv_r);
  }

  const Complex c0 = rho_s0(0, 1);
  out.has_f01_ = std::abs(c0) > kCoherenceFloor;
  if (out.has_f01_) {
    out.f01_samples_.resize(static_cast<Eigen::Index>(R), static_cast<Eigen::Index>(G));
    out.f01_.assign(G, Complex(0.0));
    out.abs_f01_.resize(G);
    out.stderr_abs_f01_.resize(G);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t g = 0; g < G; ++g)
        out.f01_samples_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) =
            normalized(per_realization[r][g](0, 1), c0);
    for (std::size_t g = 0; g < G; ++g) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < R; ++r) acc += out.f01_samples_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g));
      out.f01_[g] = acc * inv_r;
      out.abs_f01_[g] = std::abs(out.f01_[g]);
      out.stderr_abs_f01_[g] = stderr_of_modulus(out.f01_samples_.col(static_cast<Eigen::Index>(g)), out.f01_[g]);
    }
  }
  return out;
}

DecoherenceMetrics decoherence_metrics(std::span<const double> times, std::span<const double> abs_f01,
                                       double threshold) {
  if (times.size() != abs_f01.size() || times.empty()) throw InvalidArgument("metrics: times and |f01| must be non-empty and equal length");
  DecoherenceMetrics m;
  m.residual = abs_f01.back();

  std::size_t window = times.size();
  for (std::size_t k = 0; k < abs_f01.size(); ++k) {
    if (abs_f01[k] < threshold) {
      if (k == 0) {
        m.t_half = times[0];
      } else {
        const double a = abs_f01[k - 1];
        const double b = abs_f01[k];
        m.t_half = times[k - 1] + (a - threshold) / (a - b) * (times[k] - times[k - 1]);
      }
      window = k;
      break;
    }
  }

  // log|f01| = c - rate * t over the points before the crossing
  double st = 0, sy = 0, stt = 0, sty = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < window; ++k) {
    if (!(abs_f01[k] > 0.0)) continue;
    const double y = std::log(abs_f01[k]);
    st += times[k];
    sy += y;
    stt += times[k] * times[k];
    sty += times[k] * y;
    ++n;
  }
  if (n >= 3) {
    const double dn = static_cast<double>(n);
    const double denom = dn * stt - st * st;
    if (denom > 0.0) m.decay_rate = -(dn * sty - st * sy) / denom;
  }
  return m;
}

DecoherenceMetrics decoherence_metrics(const EnsembleResult& e, double threshold) {
  return decoherence_metrics(e.times, e.abs_f01(), threshold);
}

double censored_t_half(std::span<const double> times, std::span<const double> abs_f01, double threshold) {
  const auto m = decoherence_metrics(times, abs_f01, threshold);
  return m.t_half.value_or(times.back());
}

double t_half_stderr(const EnsembleResult& e, double threshold, std::size_t resamples, std::uint64_t seed) {
  const auto& samples = e.f01_samples();
  const auto R = static_cast<std::size_t>(samples.rows());
  const auto G = static_cast<std::size_t>(samples.cols());
  if (resamples < 2 || R < 2) return 0.0;
  RandomStream rng(seed);
  std::vector<double> stats(resamples);
  std::vector<std::size_t> pick(R);
  std::vector<double> abs_mean(G);
  for (std::size_t b = 0; b < resamples; ++b) {
    for (auto& p : pick) p = std::min(R - 1, static_cast<std::size_t>(rng.uniform_open() * static_cast<double>(R)));
    for (std::size_t g = 0; g < G; ++g) {
      Complex acc = 0.0;
      for (auto p : pick) acc += samples(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(g));
      abs_mean[g] = std::abs(acc / static_cast<double>(R));
    }
    stats[b] = censored_t_half(e.times, abs_mean, threshold);
  }
  double mean = 0.0;
  for (double x : stats) mean += x;
  mean /= static_cast<double>(resamples);
  return std::sqrt(sample_variance(stats, mean));
}

std::uint64_t scan_seed(std::uint64_t base_seed, std::size_t index) {
  return splitmix64(base_seed ^ splitmix64(0x5ca4ULL + index));
}

ScanResult kick_rate_scan(const Scenario& base, std::span<const double> gammas, const EnsembleOptions& opts,
                          std::size_t bootstrap) {
  if (gammas.empty()) throw InvalidArgument("kick_rate_scan: no kick rates given");
  if (!base.kicks) throw InvalidArgument("kick_rate_scan: base scenario has no kicks");
  ScanResult out{"gamma", {}};
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    Scenario s = base;
    s.kicks->gamma = gammas[i];
    s.seed = scan_seed(base.seed, i);
    const auto res = average(s, opts);
    ScanRow row{"gamma=" + shortest(gammas[i]), gammas[i], decoherence_metrics(res)};
    if (bootstrap > 0) row.metrics.t_half_stderr = t_half_stderr(res, 0.5, bootstrap);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<StrategyRow> compare_strategies(const Scenario& base, std::span<const double> dd_freqs,
                                            const EnsembleOptions& opts, std::size_t bootstrap) {
  if (!base.kicks) throw InvalidArgument("compare_strategies: base scenario has no kicks");
  Scenario kicks_only = base;
  kicks_only.kondo.reset();
  kicks_only.dd.reset();

  auto finish = [&](StrategyRow row) {
    if (row.result.has_f01()) {
      row.metrics = decoherence_metrics(row.result);
      if (bootstrap > 0) row.metrics.t_half_stderr = t_half_stderr(row.result, 0.5, bootstrap);
    }
    return row;
  };

  std::vector<StrategyRow> out;
  out.push_back(finish({Strategy::KicksOnly, "kicks", 0.0, {}, average(kicks_only, opts)}));
  for (double f : dd_freqs) {
    Scenario s = kicks_only;
    DDParams d = base.dd.value_or(DDParams{});
    if (!base.dd) d.axis = default_dd_axis(base.model.coupling);
    d.freq = f;
    s.dd = d;
    out.push_back(finish({Strategy::KicksDD, label_hz("dd@", f), f, {}, average(s, opts)}));
  }
  Scenario k = kicks_only;
  k.kondo = base.kondo.value_or(KondoParams::for_model(base.model));
  out.push_back(finish({Strategy::KicksKondo, "kondo", 0.0, {}, average(k, opts)}));
  return out;
}

std::vector<IntegerCheckRow> integer_ratio_check(const Scenario& base, std::span<const int> ps,
                                                 const EnsembleOptions& opts) {
  std::vector<IntegerCheckRow> out;
  for (int p : ps) {
    if (p < 1) throw InvalidArgument("integer_ratio_check: p must be a positive integer");
    Scenario s = base;
    s.kondo.reset();
    s.dd.reset();
    KickParams k = base.kicks.value_or(KickParams{});
    k.gamma = base.model.omega_half / p;
    s.kicks = k;
    const auto res = average(s, opts);
    IntegerCheckRow row;
    row.p = p;
    row.gamma = k.gamma;
    row.residual = res.abs_f01().back();
    row.worst_realization = res.f01_samples().col(res.f01_samples().cols() - 1).cwiseAbs().minCoeff();
    row.pass = row.residual >= 0.999;
    out.push_back(row);
  }
  return out;
}

std::vector<PopulationPoint> population_observables(const EnsembleResult& e) {
  std::vector<PopulationPoint> out(e.times.size());
  for (std::size_t g = 0; g < e.times.size(); ++g) out[g] = {e.times[g], e.rho00[g], e.rho11[g]};
  return out;
}

}  // namespace decolab
