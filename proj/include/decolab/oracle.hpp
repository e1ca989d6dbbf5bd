#ifndef DECOLAB_ORACLE_HPP
#define DECOLAB_ORACLE_HPP

#include <utility>
#include <vector>

#include "decolab/model.hpp"

namespace decolab::oracle {

/// n - 1 environment qubits coupled to the system through J_k sigma sigma. Each qubit
/// carries the populations (|alpha_k|^2, |beta_k|^2) of its two coupling eigenstates.
struct ZurekEnvironment {
  std::vector<double> couplings;                        ///< J_k in rad/s
  std::vector<std::pair<double, double>> populations;   ///< (|alpha_k|^2, |beta_k|^2)

  void validate() const;
};

/// z(t) = prod_k |alpha_k|^2 exp(-2i J_k t) + |beta_k|^2 exp(2i J_k t).
Complex zurek_z(const ZurekEnvironment& env, double t);

/// Average of S(theta) rho S(theta)^dagger over theta uniform in [0, 2 pi]: the
/// off-diagonal elements vanish and the populations are untouched.
DensityMatrix2 kondo_averaged_rho(const DensityMatrix2& rho_s0);

/// System amplitudes in the {|+>,|->} frame plus the environment written in the same frame.
struct XXState {
  Complex a_prime{1.0, 0.0};
  Complex b_prime{0.0, 0.0};
  ZurekEnvironment env;

  void validate() const;
};

/// Reduced system state under xx coupling, in the computational basis.
DensityMatrix2 xx_rho_computational(const XXState& x, double t);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n);

inline constexpr int kMaxQuadratureKicks = 4;

/// Kick-averaged decoherence factor f01(T, n) by tensor-product Gauss-Legendre quadrature
/// over the n kick amplitudes. ZZ coupling only; the kick count must match round(gamma * T).
Complex kick_average_quadrature(const ModelParams& p, const KickParams& k, const DensityMatrix2& rho_e0,
                                double horizon, int n, int nodes = 32);

}  // namespace decolab::oracle

#endif  // DECOLAB_ORACLE_HPP
