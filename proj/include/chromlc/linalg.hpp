#pragma once

// Dense complex matrix kernel. Everything here is header-only and templated on
// the Eigen expression type so that callers can pass blocks, maps and
// fixed-size matrices without copies.
//
// Sign convention used throughout the library: gates are exp(-i s h), and the
// continuous evolution solves du/dt = -i H(t) u.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "chromlc/error.hpp"

namespace chromlc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

namespace tolerance {
inline constexpr double kConstruction = 1e-12;
inline constexpr double kAlgebraic = 1e-10;
inline constexpr double kCircuit = 1e-9;
}  // namespace tolerance

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
typename Derived::RealScalar max_entry(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol) {
  if (m.rows() != m.cols()) return false;
  return max_entry(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, typename Derived::RealScalar tol) {
  if (m.rows() != m.cols()) return false;
  using Mat = DenseMatrix<typename Derived::Scalar>;
  const Mat gram = m.adjoint() * m;
  return max_entry(gram - Mat::Identity(m.rows(), m.cols())) <= tol;
}

template <typename Scalar>
struct HermitianEig {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;  // ascending
  DenseMatrix<Scalar> eigenvectors;                    // columns

  DenseMatrix<Scalar> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<Scalar>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

template <typename Scalar>
struct UnitaryEig {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  // Principal eigenphases in (-pi, pi]; eigenvalues are exp(i * phase).
  Eigen::Matrix<Real, Eigen::Dynamic, 1> phases;
  DenseMatrix<Scalar> eigenvectors;

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eigenvalues() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(phases.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) out(j) = std::polar(Real(1), phases(j));
    return out;
  }
};

inline constexpr int kMaxJacobiSweeps = 100;

// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm drops
// below 1e-14 of the total Frobenius norm, or once a full sweep finds nothing
// left to rotate.
template <typename Derived>
HermitianEig<typename Derived::Scalar> hermitian_eig(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::RealScalar tol = tolerance::kConstruction) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  using Mat = DenseMatrix<Scalar>;
  static_assert(Eigen::NumTraits<Scalar>::IsComplex, "hermitian_eig expects a complex matrix");

  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "hermitian_eig: matrix is not square");
  if (!is_hermitian(m, tol)) throw Error(ErrorKind::NotHermitian, "hermitian_eig: input is not Hermitian");

  const Eigen::Index n = m.rows();
  Mat a = (m + m.adjoint()) / Real(2);
  Mat v = Mat::Identity(n, n);

  const Real threshold = Real(1e-14) * a.norm();
  auto off_norm = [&] {
    Real sum = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
  };

  int sweep = 0;
  while (off_norm() > threshold) {
    if (++sweep > kMaxJacobiSweeps)
      throw Error(ErrorKind::NoConvergence, "hermitian_eig: exceeded 100 Jacobi sweeps");
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        if (sweep > 4 && std::abs(app) + Real(100) * mag == std::abs(app) &&
            std::abs(aqq) + Real(100) * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = Scalar(0);
          continue;
        }
        rotated = true;
        // Remove the phase of a(p,q), then apply the real symmetric rotation.
        const Real theta = (aqq - app) / (Real(2) * mag);
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                       (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;
        const Scalar phase_conj = std::conj(apq / mag);
        const Scalar j00 = c, j01 = s, j10 = -s * phase_conj, j11 = c * phase_conj;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j00 + akq * j10;
          a(k, q) = akp * j01 + akq * j11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(j00) * apk + std::conj(j10) * aqk;
          a(q, k) = std::conj(j01) * apk + std::conj(j11) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
        a(p, q) = a(q, p) = Scalar(0);
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
      }
    }
    if (!rotated) break;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });

  HermitianEig<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto src = order[static_cast<std::size_t>(j)];
    out.eigenvalues(j) = std::real(a(src, src));
    out.eigenvectors.col(j) = v.col(src);
  }
  return out;
}

// Largest singular value. Hermitian input goes straight to its spectrum.
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  using Mat = DenseMatrix<typename Derived::Scalar>;
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "operator_norm: matrix is not square");
  if (m.size() == 0) return 0;
  const Real scale = max_entry(m);
  if (scale == Real(0)) return 0;
  if (is_hermitian(m, Real(1e-12) * scale)) {
    const auto eig = hermitian_eig(m.eval(), Real(1e-12) * scale);
    return std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  }
  const Mat gram = m.adjoint() * m;
  const auto eig = hermitian_eig(gram, std::numeric_limits<Real>::infinity());
  return std::sqrt(std::max(Real(0), eig.eigenvalues(eig.eigenvalues.size() - 1)));
}

// exp(-i s h) through the spectral decomposition of h.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> expm_i(const Eigen::MatrixBase<Derived>& h,
                                             typename Derived::RealScalar s) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  const Real scale = std::max(Real(1), max_entry(h));
  const auto eig = hermitian_eig(h, Real(1e-12) * scale);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> phases(eig.eigenvalues.size());
  for (Eigen::Index j = 0; j < phases.size(); ++j)
    phases(j) = std::polar(Real(1), -s * eig.eigenvalues(j));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

// Eigendecomposition of a unitary. The Hermitian part (u + u^dag)/2 is
// diagonalized first; eigenvalue clusters closer than 1e-8 are split by
// diagonalizing the anti-Hermitian part restricted to the cluster.
template <typename Derived>
UnitaryEig<typename Derived::Scalar> unitary_eig(const Eigen::MatrixBase<Derived>& u,
                                                 typename Derived::RealScalar tol = tolerance::kAlgebraic) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  using Mat = DenseMatrix<Scalar>;
  constexpr Real kClusterGap = Real(1e-8);
  constexpr Real kPi = Real(3.141592653589793238462643383279502884L);

  if (!is_unitary(u, tol)) throw Error(ErrorKind::NotUnitary, "input is not unitary");
  const Mat uu = u;
  const Mat re_part = (uu + uu.adjoint()) / Real(2);
  const Mat im_part = (uu - uu.adjoint()) / Scalar(0, 2);

  const auto first = hermitian_eig(re_part, std::numeric_limits<Real>::infinity());
  Mat vecs = first.eigenvectors;
  const Eigen::Index n = uu.rows();

  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && first.eigenvalues(end) - first.eigenvalues(end - 1) < kClusterGap) ++end;
    const Eigen::Index size = end - begin;
    if (size > 1) {
      const Mat basis = vecs.middleCols(begin, size);
      const Mat restricted = basis.adjoint() * im_part * basis;
      const auto inner = hermitian_eig(restricted, std::numeric_limits<Real>::infinity());
      vecs.middleCols(begin, size) = basis * inner.eigenvectors;
    }
    begin = end;
  }

  UnitaryEig<Scalar> out;
  out.phases.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Scalar rayleigh = vecs.col(j).dot(uu * vecs.col(j));
    Real theta = std::arg(rayleigh);
    if (theta <= -kPi + Real(1e-12)) theta = kPi;  // closed upper end of the branch
    out.phases(j) = theta;
  }
  out.eigenvectors = std::move(vecs);
  return out;
}

// Smallest operator norm of a Hermitian a with exp(i a) = u.
template <typename Derived>
typename Derived::RealScalar unitary_angle(const Eigen::MatrixBase<Derived>& u) {
  const auto eig = unitary_eig(u);
  if (eig.phases.size() == 0) return 0;
  return eig.phases.cwiseAbs().maxCoeff();
}

// Principal Hermitian logarithm: exp(i * unitary_log(u)) == u.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> unitary_log(const Eigen::MatrixBase<Derived>& u) {
  using Scalar = typename Derived::Scalar;
  const auto eig = unitary_eig(u);
  return eig.eigenvectors * eig.phases.template cast<Scalar>().asDiagonal() *
         eig.eigenvectors.adjoint();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar spectral_distance(const Eigen::MatrixBase<DerivedA>& a,
                                                const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "spectral_distance: shapes differ");
  return operator_norm((a - b).eval());
}

template <typename DerivedA, typename DerivedB>
DenseMatrix<typename DerivedA::Scalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
  DenseMatrix<typename DerivedA::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace chromlc
