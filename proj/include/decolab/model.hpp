#ifndef DECOLAB_MODEL_HPP
#define DECOLAB_MODEL_HPP

#include <span>
#include <string_view>
#include <vector>

#include "decolab/qmat.hpp"
#include "decolab/rng.hpp"

namespace decolab {

enum class Coupling { ZZ, XX };
enum class Qubit { S, E };
enum class Axis { X, Y, Z };

std::string_view to_string(Coupling c);
std::string_view to_string(Qubit q);
std::string_view to_string(Axis a);

/// Two-qubit Hamiltonian parameters, all in Hz. The Hamiltonian carries a factor pi, so
/// its entries are angular frequencies.
struct ModelParams {
  double nu_s = 0.0;
  double nu_e = 0.0;
  double omega_half = 150.0;  ///< coupling strength Omega/2
  Coupling coupling = Coupling::ZZ;

  void validate() const;
  /// Conditional-phase rate pi * Omega/2 in rad/s.
  double coupling_rate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Random-amplitude kicks exp(-i eps sigma_y) on E, eps uniform in (-alpha, alpha), at rate gamma.
struct KickParams {
  double alpha = 0.11 * std::numbers::pi / 2.0;
  double gamma = 152.0;

  void validate() const;
  bool operator==(const KickParams&) const = default;
};

/// Pairs of pi pulses separated by a random delay in [0, delta_max], successive pairs
/// separated by a random gap in [0, gap_max].
struct KondoParams {
  double delta_max = 1.0 / 150.0;
  double gap_max = 1.0 / 150.0;
  Qubit target = Qubit::E;
  Axis axis = Axis::X;

  void validate() const;
  /// delta_max = 2/Omega, i.e. the pair phase spans one full turn; gap_max = delta_max.
  static KondoParams for_model(const ModelParams& p);
  bool operator==(const KondoParams&) const = default;
};

/// Periodic, equidistant pi pulses.
struct DDParams {
  double freq = 10.0;
  Qubit target = Qubit::S;
  Axis axis = Axis::X;

  void validate() const;
  bool operator==(const DDParams&) const = default;
};

/// DD axis that anticommutes with the system side of the coupling: X for ZZ, Z for XX.
Axis default_dd_axis(Coupling c);

/// Equal-time events are applied in this order.
enum class EventSource { Kick = 0, Kondo = 1, DD = 2 };

/// Instantaneous rotation exp(-i (angle/2) sigma_axis) on one qubit. `angle` is the
/// Bloch-sphere angle, so a kick with amplitude eps carries angle 2*eps and a pi pulse carries pi.
struct PulseEvent {
  double time = 0.0;
  Qubit target = Qubit::E;
  Axis axis = Axis::X;
  double angle = 0.0;

  bool operator==(const PulseEvent&) const = default;
};

struct Timeline {
  EventSource source = EventSource::Kick;
  double horizon = 0.0;
  std::vector<PulseEvent> events;

  bool operator==(const Timeline&) const = default;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix2> states;
  double max_unitarity_error = 0.0;  ///< worst ||U^dagger U - I||_max over all applied operators
};

Mat4 hamiltonian(const ModelParams& p);

Unitary4 free_propagator(const ModelParams& p, double dt);

/// kron(I, exp(-i eps sigma_y)).
Unitary4 kick_operator(double epsilon);

/// exp(-i (pi/2) sigma_axis) on `target`, identity on the other qubit.
Unitary4 pi_pulse(Qubit target, Axis axis);

Unitary4 pulse_operator(const PulseEvent& e);

/// n = round(gamma * T) kicks at m * T / n, m = 1..n.
Timeline sample_kick_timeline(const KickParams& k, double horizon, RandomStream& rng);

Timeline sample_kondo_timeline(const KondoParams& k, double horizon, RandomStream& rng);

/// Pulses at m / freq, m = 1..floor(freq * T).
Timeline dd_timeline(const DDParams& d, double horizon);

/// One stochastic realization: evolve rho_s0 (x) rho_e0 through the merged event list and
/// record the reduced system state at each grid time. Events at a grid time are applied
/// before that sample is taken.
Trajectory run_realization(const ModelParams& p, std::span<const Timeline> timelines,
                           const DensityMatrix2& rho_s0, const DensityMatrix2& rho_e0,
                           std::span<const double> grid, double horizon);

/// Joint state at `horizon` for an arbitrary initial joint state.
DensityMatrix4 evolve_joint(const ModelParams& p, std::span<const Timeline> timelines,
                            const DensityMatrix4& rho_se0, double horizon);

}  // namespace decolab

#endif  // DECOLAB_MODEL_HPP
