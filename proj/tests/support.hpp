#ifndef DECOLAB_TESTS_SUPPORT_HPP
#define DECOLAB_TESTS_SUPPORT_HPP

#include <random>

#include "decolab/qmat.hpp"

namespace decolab::testing {

using Rng = std::mt19937_64;

template <int N>
CMatrix<double, N> random_complex(Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix<double, N> m;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

template <int N>
CMatrix<double, N> random_hermitian(Rng& rng, double scale = 1.0) {
  const CMatrix<double, N> a = random_complex<N>(rng);
  return scale * 0.5 * (a + a.adjoint());
}

/// G G^dagger / tr, full rank with probability one.
template <int N>
DensityMatrix<double, N> random_density(Rng& rng) {
  const CMatrix<double, N> g = random_complex<N>(rng);
  CMatrix<double, N> rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix<double, N>(0.5 * (rho + rho.adjoint()));
}

template <int N>
Unitary<double, N> random_unitary(Rng& rng) {
  return expm_hermitian<double, N>(random_hermitian<N>(rng), 1.0);
}

/// Partial trace over E written as an explicit sum of <i k| rho |j k> over basis kets.
inline Mat2 brute_force_trace_env(const Mat4& rho) {
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        Eigen::Vector4cd bra = Eigen::Vector4cd::Zero(), ket = Eigen::Vector4cd::Zero();
        bra(2 * i + k) = 1.0;
        ket(2 * j + k) = 1.0;
        out(i, j) += (bra.adjoint() * rho * ket)(0, 0);
      }
  return out;
}

}  // namespace decolab::testing

#endif  // DECOLAB_TESTS_SUPPORT_HPP
