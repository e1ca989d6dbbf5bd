#include "decolab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace decolab {

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 pauli_for(Axis a) {
  switch (a) {
    case Axis::X: return pauli::x();
    case Axis::Y: return pauli::y();
    case Axis::Z: return pauli::z();
  }
  return Mat2::Identity();
}

Mat4 on_qubit(Qubit q, const Mat2& op) {
  return q == Qubit::S ? kron(op, Mat2::Identity()) : kron(Mat2::Identity(), op);
}

bool finite(double x) { return std::isfinite(x); }

std::string time_stamp(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

struct MergedEvent {
  double time;
  int source;
  std::size_t timeline;
  std::size_t index;
  const PulseEvent* event;
};

std::vector<MergedEvent> merge(std::span<const Timeline> timelines, double horizon) {
  std::vector<MergedEvent> out;
  for (std::size_t l = 0; l < timelines.size(); ++l) {
    const auto& tl = timelines[l];
    for (std::size_t i = 0; i < tl.events.size(); ++i) {
      const auto& e = tl.events[i];
      if (!(e.time >= 0.0) || e.time > horizon) {
        throw InvalidArgument("event at t = " + time_stamp(e.time) + " lies outside [0, T]");
      }
      out.push_back({e.time, static_cast<int>(tl.source), l, i, &e});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MergedEvent& a, const MergedEvent& b) {
    return std::tie(a.time, a.source) < std::tie(b.time, b.source);
  });
  return out;
}

/// Joint state evolution shared by run_realization and evolve_joint.
class Evolver {
 public:
  Evolver(const ModelParams& p, const Mat4& rho) : exp_(hamiltonian(p)), rho_(rho) {}

  void advance_to(double t) {
    if (t > now_) {
      apply(exp_(t - now_).matrix());
      now_ = t;
    }
  }

  void apply(const Mat4& u) {
    max_err_ = std::max(max_err_, unitarity_error(u));
    rho_ = u * rho_ * u.adjoint();
  }

  void apply_event(const PulseEvent& e) {
    advance_to(e.time);
    apply(pulse_operator(e).matrix());
  }

  const Mat4& state() const { return rho_; }
  double now() const { return now_; }
  double max_unitarity_error() const { return max_err_; }

 private:
  HermitianExp<double, 4> exp_;
  Mat4 rho_;
  double now_ = 0.0;
  double max_err_ = 0.0;
};

}  // namespace

std::string_view to_string(Coupling c) { return c == Coupling::ZZ ? "zz" : "xx"; }
std::string_view to_string(Qubit q) { return q == Qubit::S ? "s" : "e"; }
std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

void ModelParams::validate() const {
  if (!(omega_half > 0.0) || !finite(omega_half)) throw InvalidArgument("omega_half must be positive");
  if (!finite(nu_s) || !finite(nu_e)) throw InvalidArgument("chemical shifts must be finite");
}

double ModelParams::coupling_rate() const { return kPi * omega_half; }

void KickParams::validate() const {
  if (!(alpha >= 0.0) || !finite(alpha)) throw InvalidArgument("alpha must be non-negative");
  if (!(gamma > 0.0) || !finite(gamma)) throw InvalidArgument("gamma must be positive");
}

void KondoParams::validate() const {
  if (!(delta_max > 0.0) || !finite(delta_max)) throw InvalidArgument("kondo_delta_max must be positive");
  if (!(gap_max >= 0.0) || !finite(gap_max)) throw InvalidArgument("kondo_gap_max must be non-negative");
}

KondoParams KondoParams::for_model(const ModelParams& p) {
  KondoParams k;
  k.delta_max = 1.0 / p.omega_half;
  k.gap_max = k.delta_max;
  return k;
}

void DDParams::validate() const {
  if (!(freq > 0.0) || !finite(freq)) throw InvalidArgument("dd_freq must be positive");
}

Axis default_dd_axis(Coupling c) { return c == Coupling::ZZ ? Axis::X : Axis::Z; }

Mat4 hamiltonian(const ModelParams& p) {
  const Mat2 id = Mat2::Identity();
  const Mat4 coupling = p.coupling == Coupling::ZZ ? kron(pauli::z(), pauli::z()) : kron(pauli::x(), pauli::x());
  return kPi * (p.nu_s * kron(pauli::z(), id) + p.nu_e * kron(id, pauli::z()) + p.omega_half * coupling);
}

Unitary4 free_propagator(const ModelParams& p, double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("free_propagator: dt must be non-negative");
  return expm_hermitian<double, 4>(hamiltonian(p), dt);
}

Unitary4 kick_operator(double epsilon) {
  return Unitary4(kron(Mat2::Identity(), pauli_exp<double>(pauli::y(), epsilon)));
}

Unitary4 pi_pulse(Qubit target, Axis axis) {
  return Unitary4(on_qubit(target, pauli_exp<double>(pauli_for(axis), kPi / 2.0)));
}

Unitary4 pulse_operator(const PulseEvent& e) {
  return Unitary4(on_qubit(e.target, pauli_exp<double>(pauli_for(e.axis), e.angle / 2.0)));
}

Timeline sample_kick_timeline(const KickParams& k, double horizon, RandomStream& rng) {
  k.validate();
  if (!(horizon > 0.0)) throw InvalidArgument("kick timeline: T must be positive");
  if (k.gamma * horizon < 1.0) throw InvalidArgument("kick timeline: gamma * T < 1, no kick fits in the horizon");
  const auto n = static_cast<std::size_t>(std::llround(k.gamma * horizon));
  Timeline tl{EventSource::Kick, horizon, {}};
  tl.events.reserve(n);
  for (std::size_t m = 1; m <= n; ++m) {
    const double eps = rng.uniform_open(-k.alpha, k.alpha);
    const double t = m == n ? horizon : static_cast<double>(m) * horizon / static_cast<double>(n);
    tl.events.push_back({t, Qubit::E, Axis::Y, 2.0 * eps});
  }
  return tl;
}

Timeline sample_kondo_timeline(const KondoParams& k, double horizon, RandomStream& rng) {
  k.validate();
  if (!(horizon > k.delta_max)) throw InvalidArgument("kondo timeline: T must exceed kondo_delta_max");
  Timeline tl{EventSource::Kondo, horizon, {}};
  double t = 0.0;
  for (;;) {
    const double gap = rng.uniform_closed(0.0, k.gap_max);
    const double delta = rng.uniform_open(0.0, k.delta_max);
    const double first = t + gap;
    const double second = first + delta;
    if (second > horizon) break;
    tl.events.push_back({first, k.target, k.axis, kPi});
    tl.events.push_back({second, k.target, k.axis, kPi});
    t = second;
  }
  return tl;
}

Timeline dd_timeline(const DDParams& d, double horizon) {
  d.validate();
  if (d.freq * horizon < 1.0) throw InvalidArgument("dd timeline: freq * T < 1, no pulse fits in the horizon");
  // 1e-9 absorbs products like 42 * 0.5 landing just below an integer
  const auto count = static_cast<std::size_t>(std::floor(d.freq * horizon + 1e-9));
  Timeline tl{EventSource::DD, horizon, {}};
  tl.events.reserve(count);
  for (std::size_t m = 1; m <= count; ++m) {
    tl.events.push_back({std::min(static_cast<double>(m) / d.freq, horizon), d.target, d.axis, kPi});
  }
  return tl;
}

Trajectory run_realization(const ModelParams& p, std::span<const Timeline> timelines,
                           const DensityMatrix2& rho_s0, const DensityMatrix2& rho_e0,
                           std::span<const double> grid, double horizon) {
  p.validate();
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidArgument("sample grid must be sorted");
  if (!grid.empty() && (grid.front() < 0.0 || grid.back() > horizon)) {
    throw InvalidArgument("sample grid must lie within [0, T]");
  }
  const auto events = merge(timelines, horizon);

  Evolver ev(p, kron(rho_s0.matrix(), rho_e0.matrix()));
  Trajectory out;
  out.times.assign(grid.begin(), grid.end());
  out.states.reserve(grid.size());

  std::size_t next = 0;
  for (double g : grid) {
    while (next < events.size() && events[next].time <= g) ev.apply_event(*events[next++].event);
    if (next == 0 && g == 0.0) {
      // nothing has acted yet; record the exact initial state
      out.states.push_back(rho_s0);
      continue;
    }
    ev.advance_to(g);
    try {
      const DensityMatrix4 joint(ev.state());
      out.states.push_back(partial_trace_env(joint));
    } catch (const InvariantViolation& e) {
      throw InvariantViolation(std::string(e.what()) + " at t = " + time_stamp(g));
    }
  }
  out.max_unitarity_error = ev.max_unitarity_error();
  if (out.max_unitarity_error > tol::unitary) {
    throw InvariantViolation("propagator unitarity error " + std::to_string(out.max_unitarity_error) + " exceeds tolerance");
  }
  return out;
}

DensityMatrix4 evolve_joint(const ModelParams& p, std::span<const Timeline> timelines,
                            const DensityMatrix4& rho_se0, double horizon) {
  p.validate();
  const auto events = merge(timelines, horizon);
  Evolver ev(p, rho_se0.matrix());
  for (const auto& e : events) ev.apply_event(*e.event);
  ev.advance_to(horizon);
  return DensityMatrix4(ev.state());
}

}  // namespace decolab
