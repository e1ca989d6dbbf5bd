#ifndef DECOLAB_QMAT_HPP
#define DECOLAB_QMAT_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "decolab/error.hpp"

namespace decolab {

template <typename Real, int N>
using CMatrix = Eigen::Matrix<std::complex<Real>, N, N>;

using Mat2 = CMatrix<double, 2>;
using Mat4 = CMatrix<double, 4>;
using Complex = std::complex<double>;

/// Tolerances shared by every density-matrix and propagator check.
namespace tol {
inline constexpr double trace = 1e-10;
inline constexpr double hermitian = 1e-10;
inline constexpr double psd = -1e-9;
inline constexpr double unitary = 1e-12;
}  // namespace tol

namespace pauli {

template <typename Real = double>
CMatrix<Real, 2> identity() { return CMatrix<Real, 2>::Identity(); }

template <typename Real = double>
CMatrix<Real, 2> x() {
  CMatrix<Real, 2> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
CMatrix<Real, 2> y() {
  using C = std::complex<Real>;
  CMatrix<Real, 2> m;
  m << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
  return m;
}

template <typename Real = double>
CMatrix<Real, 2> z() {
  CMatrix<Real, 2> m;
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace pauli

template <typename Real = double>
CMatrix<Real, 2> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  CMatrix<Real, 2> m;
  m << s, s, s, -s;
  return m;
}

/// Largest entrywise modulus.
template <typename Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
typename Derived::RealScalar hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

template <typename Derived>
typename Derived::RealScalar unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  using Plain = typename Derived::PlainObject;
  return max_abs(u.adjoint() * u - Plain::Identity(u.rows(), u.cols()));
}

/// Smallest eigenvalue of the Hermitian part of `m`.
template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  using Real = typename Derived::RealScalar;
  const Plain h = (m + m.adjoint()) * Real(0.5);
  if constexpr (Plain::RowsAtCompileTime == 2) {
    // closed form for 2x2
    const Real a = h(0, 0).real();
    const Real d = h(1, 1).real();
    const Real off = std::abs(h(0, 1));
    return Real(0.5) * (a + d) - std::sqrt(Real(0.25) * (a - d) * (a - d) + off * off);
  } else {
    Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
}

/// Kronecker product of two 2x2 operators; `a` acts on S (first factor), `b` on E.
template <typename DerivedA, typename DerivedB>
CMatrix<typename DerivedA::RealScalar, 4> kron(const Eigen::MatrixBase<DerivedA>& a,
                                               const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2) {
    throw DimensionError("kron expects two 2x2 operands");
  }
  CMatrix<typename DerivedA::RealScalar, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Unchecked partial trace over E of a 4x4 operator.
template <typename Derived>
CMatrix<typename Derived::RealScalar, 2> trace_out_env(const Eigen::MatrixBase<Derived>& m) {
  CMatrix<typename Derived::RealScalar, 2> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

/// Closed-form exp(-i phi sigma) for a Pauli matrix sigma.
template <typename Real = double>
CMatrix<Real, 2> pauli_exp(const CMatrix<Real, 2>& sigma, Real phi) {
  return std::cos(phi) * CMatrix<Real, 2>::Identity() -
         std::complex<Real>(0, std::sin(phi)) * sigma;
}

template <typename Real, int N>
class Unitary;

/// Hermitian, unit-trace, positive semidefinite operator. Validated on construction.
template <typename Real, int N>
class DensityMatrix {
  static_assert(N == 2 || N == 4, "only one- and two-qubit states are supported");

 public:
  using Matrix = CMatrix<Real, N>;

  explicit DensityMatrix(const Matrix& m) : mat_(m) { validate(mat_); }

  const Matrix& matrix() const { return mat_; }
  std::complex<Real> operator()(int i, int j) const { return mat_(i, j); }

  static void validate(const Matrix& m) {
    const Real tr_err = std::abs(m.trace() - std::complex<Real>(1));
    if (tr_err > tol::trace) throw InvariantViolation("density matrix trace deviates from 1 by " + std::to_string(tr_err));
    const Real h_err = hermiticity_error(m);
    if (h_err > tol::hermitian) throw InvariantViolation("density matrix is not Hermitian (error " + std::to_string(h_err) + ")");
    const Real lmin = min_eigenvalue(m);
    if (lmin < tol::psd) throw InvariantViolation("density matrix has negative eigenvalue " + std::to_string(lmin));
  }

  static bool is_valid(const Matrix& m) {
    try {
      validate(m);
      return true;
    } catch (const InvariantViolation&) {
      return false;
    }
  }

  static DensityMatrix maximally_mixed() { return DensityMatrix(Matrix::Identity() / Real(N)); }

 private:
  struct Unchecked {};
  DensityMatrix(const Matrix& m, Unchecked) : mat_(m) {}
  template <typename R, int M>
  friend class Unitary;
  template <typename R>
  friend DensityMatrix<R, 2> partial_trace_env(const DensityMatrix<R, 4>&);
  template <typename R, int M>
  friend DensityMatrix<R, M> hadamard_frame(const DensityMatrix<R, M>&);

  Matrix mat_;
};

/// Operator with U^dagger U = I to within tol::unitary.
template <typename Real, int N>
class Unitary {
 public:
  using Matrix = CMatrix<Real, N>;

  explicit Unitary(const Matrix& m) : mat_(m) {
    const Real err = unitarity_error(mat_);
    if (err > tol::unitary) throw InvariantViolation("operator is not unitary (error " + std::to_string(err) + ")");
  }

  static Unitary identity() { return Unitary(Matrix::Identity()); }

  const Matrix& matrix() const { return mat_; }

  Unitary operator*(const Unitary& rhs) const { return Unitary(mat_ * rhs.mat_, Unchecked{}); }

  /// U rho U^dagger; spectrum is preserved so only trace/hermiticity drift is rechecked.
  DensityMatrix<Real, N> conjugate(const DensityMatrix<Real, N>& rho) const {
    Matrix out = mat_ * rho.matrix() * mat_.adjoint();
    out = (out + out.adjoint()).eval() * Real(0.5);
    if (std::abs(out.trace() - std::complex<Real>(1)) > tol::trace) {
      throw InvariantViolation("conjugation broke the trace");
    }
    return DensityMatrix<Real, N>(out, typename DensityMatrix<Real, N>::Unchecked{});
  }

 private:
  struct Unchecked {};
  Unitary(const Matrix& m, Unchecked) : mat_(m) {}

  Matrix mat_;
};

using DensityMatrix2 = DensityMatrix<double, 2>;
using DensityMatrix4 = DensityMatrix<double, 4>;
using Unitary2 = Unitary<double, 2>;
using Unitary4 = Unitary<double, 4>;

template <typename Real, int N>
DensityMatrix<Real, N> conjugate(const DensityMatrix<Real, N>& rho, const Unitary<Real, N>& u) {
  return u.conjugate(rho);
}

template <typename Real>
DensityMatrix<Real, 4> kron(const DensityMatrix<Real, 2>& a, const DensityMatrix<Real, 2>& b) {
  return DensityMatrix<Real, 4>(kron(a.matrix(), b.matrix()));
}

template <typename Real>
Unitary<Real, 4> kron(const Unitary<Real, 2>& a, const Unitary<Real, 2>& b) {
  return Unitary<Real, 4>(kron(a.matrix(), b.matrix()));
}

/// rho^S[i][j] = sum_k rho^{SE}[(i,k)][(j,k)].
template <typename Real>
DensityMatrix<Real, 2> partial_trace_env(const DensityMatrix<Real, 4>& rho) {
  CMatrix<Real, 2> out = trace_out_env(rho.matrix());
  DensityMatrix<Real, 2>::validate(out);
  return DensityMatrix<Real, 2>(out, typename DensityMatrix<Real, 2>::Unchecked{});
}

/// H rho H^dagger: maps a {|+>,|->} representation to the computational basis and back.
template <typename Real, int N>
DensityMatrix<Real, N> hadamard_frame(const DensityMatrix<Real, N>& rho) {
  static_assert(N == 2, "hadamard_frame acts on a single qubit");
  const CMatrix<Real, 2> h = hadamard<Real>();
  CMatrix<Real, 2> out = h * rho.matrix() * h.adjoint();
  return DensityMatrix<Real, 2>(out, typename DensityMatrix<Real, 2>::Unchecked{});
}

/// exp(-i h t) through the eigendecomposition of a Hermitian h.
template <typename Real, int N>
class HermitianExp {
 public:
  using Matrix = CMatrix<Real, N>;

  explicit HermitianExp(const Matrix& h) {
    const Real err = hermiticity_error(h);
    if (err > tol::hermitian) throw InvariantViolation("expm_hermitian: input is not Hermitian (error " + std::to_string(err) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * Real(0.5));
    values_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }

  Unitary<Real, N> operator()(Real t) const {
    Eigen::Matrix<std::complex<Real>, N, 1> phases;
    for (int k = 0; k < N; ++k) phases(k) = std::polar(Real(1), -values_(k) * t);
    return Unitary<Real, N>(vectors_ * phases.asDiagonal() * vectors_.adjoint());
  }

 private:
  Eigen::Matrix<Real, N, 1> values_;
  Matrix vectors_;
};

template <typename Real, int N>
Unitary<Real, N> expm_hermitian(const CMatrix<Real, N>& h, Real t) {
  return HermitianExp<Real, N>(h)(t);
}

}  // namespace decolab

#endif  // DECOLAB_QMAT_HPP
