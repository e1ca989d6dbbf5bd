#include "decolab/oracle.hpp"

#include <cmath>
#include <numbers>

namespace decolab::oracle {

namespace {

constexpr double kNormTol = 1e-12;

using Mat2c = decolab::Mat2;

/// Sum over the tensor grid, one kick amplitude per level.
class KickQuadrature {
 public:
  KickQuadrature(const Mat2c& v0, const Mat2c& v1, const Mat2c& rho_e, double alpha, const QuadratureRule& rule)
      : v0_(v0), v1_(v1), rho_e_(rho_e) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      kicks_.push_back(pauli_exp<double>(pauli::y(), alpha * rule.nodes[i]));
      weights_.push_back(0.5 * rule.weights[i]);  // d(eps)/(2 alpha) over (-alpha, alpha) becomes dx/2 over (-1, 1)
    }
  }

  Complex run(int n) const { return level(n, Mat2c::Identity(), Mat2c::Identity()); }

 private:
  Complex level(int remaining, const Mat2c& a0, const Mat2c& a1) const {
    if (remaining == 0) return (a0 * rho_e_ * a1.adjoint()).trace();
    const Mat2c s0 = v0_ * a0;
    const Mat2c s1 = v1_ * a1;
    Complex acc = 0.0;
    for (std::size_t i = 0; i < kicks_.size(); ++i) {
      acc += weights_[i] * level(remaining - 1, kicks_[i] * s0, kicks_[i] * s1);
    }
    return acc;
  }

  Mat2c v0_, v1_, rho_e_;
  std::vector<Mat2c> kicks_;
  std::vector<double> weights_;
};

}  // namespace

void ZurekEnvironment::validate() const {
  if (couplings.size() != populations.size()) throw InvalidArgument("environment: couplings and populations differ in length");
  for (const auto& [a, b] : populations) {
    if (a < 0.0 || b < 0.0 || std::abs(a + b - 1.0) > kNormTol) {
      throw InvalidArgument("environment: populations must be non-negative and sum to 1");
    }
  }
}

Complex zurek_z(const ZurekEnvironment& env, double t) {
  env.validate();
  Complex z = 1.0;
  for (std::size_t k = 0; k < env.couplings.size(); ++k) {
    const double phase = 2.0 * env.couplings[k] * t;
    const auto [a, b] = env.populations[k];
    z *= a * std::polar(1.0, -phase) + b * std::polar(1.0, phase);
  }
  return z;
}

DensityMatrix2 kondo_averaged_rho(const DensityMatrix2& rho_s0) {
  Mat2 out = Mat2::Zero();
  out(0, 0) = rho_s0(0, 0);
  out(1, 1) = rho_s0(1, 1);
  return DensityMatrix2(out);
}

void XXState::validate() const {
  if (std::abs(std::norm(a_prime) + std::norm(b_prime) - 1.0) > kNormTol) {
    throw InvalidArgument("XX state: |a'|^2 + |b'|^2 must equal 1");
  }
  env.validate();
}

DensityMatrix2 xx_rho_computational(const XXState& x, double t) {
  x.validate();
  const Complex omega = x.a_prime * std::conj(x.b_prime) * zurek_z(x.env, t);
  const double pa = std::norm(x.a_prime);
  const double pb = std::norm(x.b_prime);
  const Complex i2im(0.0, 2.0 * omega.imag());
  Mat2 m;
  m(0, 0) = 0.5 * (pa + pb + 2.0 * omega.real());
  m(1, 1) = 0.5 * (pa + pb - 2.0 * omega.real());
  m(0, 1) = 0.5 * (pa - pb - i2im);
  m(1, 0) = 0.5 * (pa - pb + i2im);
  return DensityMatrix2(m);
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

Complex kick_average_quadrature(const ModelParams& p, const KickParams& k, const DensityMatrix2& rho_e0,
                                double horizon, int n, int nodes) {
  p.validate();
  k.validate();
  if (p.coupling != Coupling::ZZ) throw InvalidArgument("kick_average_quadrature: only zz coupling is supported");
  if (n < 1 || n > kMaxQuadratureKicks) throw InvalidArgument("kick_average_quadrature: kick count must be in [1, 4]");
  if (std::llround(k.gamma * horizon) != n) throw InvalidArgument("kick_average_quadrature: n must equal round(gamma * T)");

  const Mat4 u = free_propagator(p, horizon / n).matrix();
  const Mat2 v0 = u.block<2, 2>(0, 0);
  const Mat2 v1 = u.block<2, 2>(2, 2);
  if (k.alpha == 0.0) {
    return KickQuadrature(v0, v1, rho_e0.matrix(), 0.0, QuadratureRule{{0.0}, {2.0}}).run(n);
  }
  return KickQuadrature(v0, v1, rho_e0.matrix(), k.alpha, gauss_legendre(nodes)).run(n);
}

}  // namespace decolab::oracle
