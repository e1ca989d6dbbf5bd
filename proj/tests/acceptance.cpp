// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "decolab/ensemble.hpp"
#include "decolab/io.hpp"
#include "decolab/oracle.hpp"
#include "support.hpp"

using namespace decolab;
using decolab::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOmegaHalf = 150.0;
const EnsembleOptions kThreads{0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Scenario zz_kicks(double gamma, std::size_t realizations = 500, std::uint64_t seed = 1) {
  Scenario s;
  s.model = {0.0, 0.0, kOmegaHalf, Coupling::ZZ};
  s.kicks = KickParams{0.11 * kPi / 2, gamma};
  s.horizon = 1.0;
  s.grid = uniform_grid(1.0, 200);
  s.realizations = realizations;
  s.seed = seed;
  return s;
}

Scenario xx_kicks(double gamma, double horizon, std::size_t realizations = 500, std::uint64_t seed = 1) {
  Scenario s = zz_kicks(gamma, realizations, seed);
  s.model.coupling = Coupling::XX;
  s.system_frame = Frame::PlusMinus;
  s.rho_s0 = states::plus();
  s.horizon = horizon;
  s.grid = uniform_grid(horizon, 200);
  return s;
}

Scenario with_kondo(Scenario s) {
  s.kondo = KondoParams::for_model(s.model);
  return s;
}

Scenario with_dd(Scenario s, double freq) {
  s.dd = DDParams{freq, Qubit::S, default_dd_axis(s.model.coupling)};
  return s;
}

struct HalfLife {
  double value = 0.0;  ///< censored at the horizon
  bool reached = false;
  double se = 0.0;
};

HalfLife half_life(const Scenario& s) {
  const auto e = average(s, kThreads);
  const auto m = decoherence_metrics(e);
  return {m.t_half.value_or(e.times.back()), m.reached(), t_half_stderr(e, 0.5, 200)};
}

std::string describe(const char* name, const HalfLife& h) {
  return fmt("%s t_half=%.4g%s se=%.2g", name, h.value, h.reached ? "" : "(not reached)", h.se);
}

/// True when a - b exceeds three combined standard errors.
bool clearly_longer(const HalfLife& a, const HalfLife& b) {
  return a.value - b.value > 3.0 * std::hypot(a.se, b.se);
}

// ---------------------------------------------------------------------------------------

Outcome invariants() {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad_states = 0;
  double worst_unitarity = 0.0, worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ModelParams p{40 * u(rng) - 20, 40 * u(rng) - 20, 20 + 280 * u(rng),
                        trial % 2 ? Coupling::XX : Coupling::ZZ};
    const double T = 0.05 + 0.25 * u(rng);
    const int noise = trial % 8;  // every subset of {kicks, Kondo, DD}
    std::vector<Timeline> tls;
    RandomStream kr(derive_seed(trial, 0, StreamKind::Kicks)), kd(derive_seed(trial, 0, StreamKind::Kondo));
    if (noise & 1) tls.push_back(sample_kick_timeline({kPi / 2 * u(rng), (1 + 300 * u(rng)) / T}, T, kr));
    if (noise & 2) {
      KondoParams k = KondoParams::for_model(p);
      k.gap_max *= 3 * u(rng);
      tls.push_back(sample_kondo_timeline(k, T, kd));
    }
    if (noise & 4) {
      tls.push_back(dd_timeline({(1 + 100 * u(rng)) / T, u(rng) < 0.5 ? Qubit::S : Qubit::E,
                                 static_cast<Axis>(trial / 8 % 3)},
                                T));
    }
    const auto rho_s = testing::random_density<2>(rng);
    const auto rho_e = testing::random_density<2>(rng);
    const auto grid = uniform_grid(T, 25);
    const auto tr = run_realization(p, tls, rho_s, rho_e, grid, T);
    worst_unitarity = std::max(worst_unitarity, tr.max_unitarity_error);
    for (const auto& st : tr.states) {
      const Mat2& m = st.matrix();
      const double t_err = std::abs(m.trace() - 1.0);
      const double h_err = max_abs(m - m.adjoint());
      Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (m + m.adjoint()));
      const double e_min = es.eigenvalues().minCoeff();
      worst_trace = std::max(worst_trace, t_err);
      worst_herm = std::max(worst_herm, h_err);
      worst_eig = std::min(worst_eig, e_min);
      if (t_err > tol::trace || h_err > tol::hermitian || e_min < tol::psd) ++bad_states;
    }
  }
  return {bad_states == 0 && worst_unitarity <= 1e-12,
          fmt("1000 realizations, bad states=%d, max |tr-1|=%.1e, max herm=%.1e, min eig=%.1e, max unitarity err=%.1e",
              bad_states, worst_trace, worst_herm, worst_eig, worst_unitarity)};
}

/// z(t) as the full sum over environment basis configurations.
Complex zurek_enumerated(const oracle::ZurekEnvironment& env, double t) {
  const std::size_t n = env.couplings.size();
  Complex z = 0.0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double weight = 1.0, phase = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool up = (mask >> k) & 1;
      weight *= up ? env.populations[k].first : env.populations[k].second;
      phase += (up ? -2.0 : 2.0) * env.couplings[k];
    }
    z += weight * std::polar(1.0, phase * t);
  }
  return z;
}

/// z(t) with like terms collected: couplings are integer multiples j_k of J, so the expanded
/// product is a Laurent polynomial in exp(2 i J t).
Complex zurek_collected(const std::vector<int>& j, double J, const oracle::ZurekEnvironment& env, double t) {
  std::map<int, double> poly{{0, 1.0}};
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::map<int, double> next;
    for (const auto& [power, c] : poly) {
      next[power - j[k]] += c * env.populations[k].first;
      next[power + j[k]] += c * env.populations[k].second;
    }
    poly.swap(next);
  }
  Complex z = 0.0;
  for (const auto& [power, c] : poly) z += c * std::polar(1.0, 2.0 * J * power * t);
  return z;
}

Outcome zurek() {
  Rng rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, max_mod = 0.0;
  int cases = 0;
  for (int n = 2; n <= 50; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      oracle::ZurekEnvironment env;
      std::vector<int> j;
      const double J = 1 + 20 * u(rng);
      const bool enumerate = n <= 16;
      for (int k = 0; k < n - 1; ++k) {
        const double q = u(rng);
        j.push_back(1 + static_cast<int>(5 * u(rng)));
        env.couplings.push_back(enumerate ? 50 * u(rng) : J * j.back());
        env.populations.emplace_back(q, 1 - q);
      }
      for (int s = 0; s < 5; ++s) {
        const double t = u(rng);
        const Complex z = oracle::zurek_z(env, t);
        const Complex ref = enumerate ? zurek_enumerated(env, t) : zurek_collected(j, J, env, t);
        worst = std::max(worst, std::abs(z - ref));
        max_mod = std::max(max_mod, std::abs(z));
        ++cases;
      }
    }
  }
  return {worst <= 1e-12 && max_mod <= 1.0 + 1e-15,
          fmt("%d evaluations, n=2..50 (full enumeration to n=16, collected terms beyond), max err=%.1e, max |z|=%.17g",
              cases, worst, max_mod)};
}

Outcome kondo_dephasing() {
  Rng rng(3);
  double worst_off = 0.0, worst_diag = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = testing::random_density<2>(rng);
    const auto avg = oracle::kondo_averaged_rho(rho);
    worst_off = std::max({worst_off, std::abs(avg(0, 1)), std::abs(avg(1, 0))});
    worst_diag = std::max(worst_diag, std::abs(avg(0, 0) - rho(0, 0)));
  }
  Scenario s = zz_kicks(152.0, 2000);
  s.kicks.reset();
  s = with_kondo(s);
  const auto e = average(s, kThreads);
  const double bound = 3.0 / std::sqrt(2000.0);
  const double f = e.abs_f01().back();
  return {worst_off == 0.0 && worst_diag == 0.0 && f <= bound,
          fmt("oracle off-diagonal=%.1e, Kondo-only R=2000 |f01(T)|=%.4g (bound %.4g)", worst_off, f, bound)};
}

Outcome integer_ratio() {
  std::string detail;
  bool pass = true;
  for (int p : {1, 2, 3}) {
    Scenario s = zz_kicks(kOmegaHalf / p, 500, 40 + p);
    const auto e = average(s, kThreads);
    const auto last = e.f01_samples().col(e.f01_samples().cols() - 1).cwiseAbs();
    const double dev = std::max(std::abs(last.minCoeff() - 1.0), std::abs(last.maxCoeff() - 1.0));
    pass = pass && dev <= 1e-9;
    detail += fmt("%sgamma=%g max||f01(T)|-1|=%.1e", detail.empty() ? "" : ", ", s.kicks->gamma, dev);
  }
  return {pass, detail + " over 500 realizations each"};
}

Outcome quadrature() {
  Rng rng(515);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int agree = 0;
  double worst_z = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    Scenario s = zz_kicks(1.0, 10000, 1000 + trial);
    s.model.omega_half = 20 + 280 * u(rng);
    s.horizon = 0.002 + 0.03 * u(rng);
    s.kicks = KickParams{kPi / 2 * u(rng), n / s.horizon};
    s.grid = {0.0, s.horizon};
    const auto e = average(s, kThreads);
    const double q = std::abs(oracle::kick_average_quadrature(s.model, *s.kicks, s.rho_e0, s.horizon, n));
    // a single kick at T leaves |f01| deterministic, so the standard error is pure roundoff
    const double diff = std::abs(e.abs_f01()[1] - q);
    const double se = e.stderr_abs_f01()[1];
    if (se > 1e-12) worst_z = std::max(worst_z, diff / se);
    agree += diff <= 3.0 * se + 1e-12 ? 1 : 0;
  }
  return {agree >= 18, fmt("%d/20 draws within 3 se + 1e-12 (R=10000, n<=4), worst %.2f se among stochastic draws", agree, worst_z)};
}

Outcome monotonicity() {
  const auto slow = half_life(zz_kicks(52.0));
  const auto fast = half_life(zz_kicks(252.0));
  return {clearly_longer(slow, fast), describe("gamma=52", slow) + "; " + describe("gamma=252", fast)};
}

Outcome resonant_suppression() {
  const auto k152 = half_life(zz_kicks(152.0));
  const auto kk152 = half_life(with_kondo(zz_kicks(152.0)));
  const auto k252 = half_life(zz_kicks(252.0));
  const auto kk252 = half_life(with_kondo(zz_kicks(252.0)));
  return {clearly_longer(kk152, k152) && kk252.value < k252.value,
          describe("152 kicks+Kondo", kk152) + "; " + describe("152 kicks", k152) + "; " +
              describe("252 kicks+Kondo", kk252) + "; " + describe("252 kicks", k252)};
}

Outcome beats_slow_dd() {
  const auto kondo = half_life(with_kondo(zz_kicks(152.0)));
  const auto dd = half_life(with_dd(zz_kicks(152.0), 7.6));
  return {clearly_longer(kondo, dd), describe("kicks+Kondo", kondo) + "; " + describe("kicks+DD 7.6Hz", dd)};
}

Outcome xx_analytic() {
  Rng rng(909);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, pop_lo = 1.0, pop_hi = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p{0.0, 0.0, 20 + 280 * u(rng), Coupling::XX};
    const Complex ap = std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng));
    const Complex bp = std::polar(std::sqrt(1 - std::norm(ap)), 2 * kPi * u(rng));
    const double q = u(rng);
    Mat2 s_pm, e_pm = Mat2::Zero();
    s_pm << std::norm(ap), ap * std::conj(bp), bp * std::conj(ap), std::norm(bp);
    e_pm.diagonal() << q, 1 - q;
    const oracle::XXState x{ap, bp, {{p.coupling_rate()}, {{q, 1 - q}}}};
    const double T = 0.1;
    const auto grid = uniform_grid(T, 50);
    const auto tr = run_realization(p, {}, hadamard_frame(DensityMatrix2(s_pm)), hadamard_frame(DensityMatrix2(e_pm)),
                                    grid, T);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto ref = oracle::xx_rho_computational(x, grid[g]);
      worst = std::max(worst, max_abs(tr.states[g].matrix() - ref.matrix()));
      for (int i = 0; i < 2; ++i) {
        pop_lo = std::min(pop_lo, tr.states[g](i, i).real());
        pop_hi = std::max(pop_hi, tr.states[g](i, i).real());
      }
    }
  }
  return {worst <= 1e-10 && pop_lo >= 0.0 && pop_hi <= 1.0,
          fmt("20 random states x 50 times, max entry err=%.1e, populations in [%.3g, %.3g]", worst, pop_lo, pop_hi)};
}

Outcome xx_damping() {
  const double T = 2.0;
  const double fast = average(xx_kicks(202.0, T), kThreads).rho00.back();
  const double slow = average(xx_kicks(52.0, T), kThreads).rho00.back();
  return {std::abs(fast - 0.5) <= 0.05 && std::abs(slow - 0.5) > 0.05,
          fmt("T=%g: gamma=202 rho00(T)=%.4f, gamma=52 rho00(T)=%.4f (target 0.5 +- 0.05 for 202 only)", T, fast, slow)};
}

Outcome xx_dd_retention() {
  const double T = 2.0;
  const auto dd = average(with_dd(xx_kicks(152.0, T), 15.2), kThreads);
  const auto kondo = average(with_kondo(xx_kicks(152.0, T)), kThreads);
  const double dd_min = *std::min_element(dd.rho00.begin(), dd.rho00.end());
  const double kondo_end = kondo.rho00.back();
  return {dd_min >= 0.8 && std::abs(kondo_end - 0.5) <= 0.05,
          fmt("T=%g: kicks+DD 15.2Hz min rho00=%.4f (need >= 0.8), kicks+Kondo rho00(T)=%.4f (need 0.5 +- 0.05)", T,
              dd_min, kondo_end)};
}

Outcome determinism() {
  const std::vector<Scenario> runs{zz_kicks(52.0), with_kondo(zz_kicks(152.0)), with_dd(zz_kicks(152.0), 7.6),
                                   xx_kicks(202.0, 2.0), with_kondo(xx_kicks(152.0, 2.0))};
  int identical = 0;
  for (const auto& s : runs) {
    std::ostringstream one, many;
    write_series_csv(one, average(s, {1}), s);
    write_series_csv(many, average(s, {4}), s);
    std::ostringstream again;
    write_series_csv(again, average(s, {1}), s);
    identical += (one.str() == many.str() && one.str() == again.str()) ? 1 : 0;
  }
  return {identical == static_cast<int>(runs.size()),
          fmt("%d/%zu scenarios byte-identical across repeats and 1 vs 4 workers", identical, runs.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"invariants of states and propagators", invariants},
      {"product formula vs term expansion", zurek},
      {"phase-averaged pulse pairs dephase completely", kondo_dephasing},
      {"commensurate kick periods cause no decoherence", integer_ratio},
      {"Monte Carlo vs kick quadrature", quadrature},
      {"t_half falls with kick rate off resonance", monotonicity},
      {"pulse pairs suppress decoherence at resonance", resonant_suppression},
      {"pulse pairs outperform 7.6 Hz decoupling", beats_slow_dd},
      {"xx closed form vs simulation", xx_analytic},
      {"xx populations damp to 1/2", xx_damping},
      {"xx decoupling retains the population", xx_dd_retention},
      {"determinism across worker counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s: %s | %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
