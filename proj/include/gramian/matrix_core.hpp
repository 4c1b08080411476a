#pragma once

// Dense matrix numerics shared by every module. Everything here is templated on
// the Eigen expression type so real and complex scalars go through one path;
// the rest of the library instantiates it with std::complex<double>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "gramian/errors.hpp"

namespace gkit {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<typename Eigen::NumTraits<Scalar>::Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;

/// Numerical thresholds used across the library.
struct Tolerances {
  double eq_rel = 1e-8;         ///< relative residual bound for operator equality
  double psd_abs = 1e-10;       ///< eigenvalue floor scale for PSD decisions
  double series_term = 1e-15;   ///< binomial series stops once a term is smaller
  int series_max_terms = 10000;

  void validate() const {
    if (!(eq_rel > 0) || !(psd_abs > 0) || !(series_term > 0) || series_max_terms < 1) {
      throw InvalidInput("tolerances must be strictly positive");
    }
  }
};

/// Singular values at or below this fraction of σ_max count as zero.
inline constexpr double kRankCutoff = 1e-10;

/// inv_sqrt_series refuses ‖A − I‖ ≥ 1 − kSeriesMargin.
inline constexpr double kSeriesMargin = 1e-6;

namespace detail {

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
  }
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

template <typename DerivedA, typename DerivedB>
void require_same_shape(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch");
  }
}

}  // namespace detail

/// Largest singular value, i.e. the operator norm induced by the Euclidean norm.
template <typename Derived>
typename Derived::RealScalar spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  detail::require_finite(m, "spectral_norm");
  if (m.size() == 0) return 0;
  using Plain = Matrix<typename Derived::Scalar>;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues()(0);
}

/// ‖X − Y‖ / (1 + ‖Y‖), the scale-aware equality residual used everywhere.
template <typename DerivedX, typename DerivedY>
typename DerivedX::RealScalar relative_residual(const Eigen::MatrixBase<DerivedX>& x,
                                               const Eigen::MatrixBase<DerivedY>& y) {
  detail::require_same_shape(x, y, "relative_residual");
  return spectral_norm(x - y) / (1 + spectral_norm(y));
}

template <typename Scalar>
struct Eigh {
  RealVector<Scalar> values;  ///< ascending
  Matrix<Scalar> vectors;     ///< unitary, columns are eigenvectors
};

/// Hermitian eigendecomposition of (M + M*)/2.
template <typename Derived>
Eigh<typename Derived::Scalar> eigh(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(m, "eigh");
  detail::require_finite(m, "eigh");
  if (m.size() == 0) return {};
  const Matrix<Scalar> herm = (m + m.adjoint()) / typename Derived::RealScalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(herm);
  if (solver.info() != Eigen::Success) throw NoConvergence("eigh: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Relative amount by which B − A fails to be PSD: max(0, −λ_min) / (1 + ‖B − A‖).
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar loewner_deficit(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  detail::require_same_shape(a, b, "loewner");
  detail::require_square(a, "loewner");
  if (a.size() == 0) return 0;
  const auto spectrum = eigh(b - a).values;
  const auto lo = spectrum(0);
  const auto norm = std::max(std::abs(lo), std::abs(spectrum(spectrum.size() - 1)));
  return std::max<typename DerivedA::RealScalar>(0, -lo) / (1 + norm);
}

/// A ≤ B in the Loewner order, up to psd_abs.
template <typename DerivedA, typename DerivedB>
bool loewner_leq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                 const Tolerances& tol = {}) {
  return loewner_deficit(a, b) <= tol.psd_abs;
}

/// Principal square root of a Hermitian PSD matrix via its spectrum. Eigenvalues
/// in [−psd_abs·‖A‖, 0) are treated as zero.
template <typename Derived>
Matrix<typename Derived::Scalar> sqrt_psd(const Eigen::MatrixBase<Derived>& a,
                                          const Tolerances& tol = {}) {
  using Real = typename Derived::RealScalar;
  auto [values, vectors] = eigh(a);
  if (values.size() == 0) return Matrix<typename Derived::Scalar>(0, 0);
  const Real norm = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  if (values(0) < -tol.psd_abs * norm) {
    throw NotPositive("sqrt_psd: smallest eigenvalue " + std::to_string(values(0)) +
                      " is below the clamping floor");
  }
  const RealVector<typename Derived::Scalar> roots = values.cwiseMax(Real(0)).cwiseSqrt();
  return vectors * roots.asDiagonal() * vectors.adjoint();
}

/// Inverse square root via the spectrum; the independent route to A^{-1/2}.
template <typename Derived>
Matrix<typename Derived::Scalar> inv_sqrt_spectral(const Eigen::MatrixBase<Derived>& a,
                                                   const Tolerances& tol = {}) {
  using Real = typename Derived::RealScalar;
  auto [values, vectors] = eigh(a);
  if (values.size() == 0) return Matrix<typename Derived::Scalar>(0, 0);
  const Real norm = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  if (values(0) <= tol.psd_abs * norm) {
    throw NotPositive("inv_sqrt_spectral: matrix is not positive definite");
  }
  const RealVector<typename Derived::Scalar> inv_roots = values.cwiseSqrt().cwiseInverse();
  return vectors * inv_roots.asDiagonal() * vectors.adjoint();
}

/// A^{-1/2} as the binomial series Σ_k C(−1/2, k)(A − I)^k. Converges for
/// ‖A − I‖ < 1; inputs within kSeriesMargin of that are rejected.
template <typename Derived>
Matrix<typename Derived::Scalar> inv_sqrt_series(const Eigen::MatrixBase<Derived>& a,
                                                 const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Derived::RealScalar;
  detail::require_square(a, "inv_sqrt_series");
  detail::require_finite(a, "inv_sqrt_series");
  const Eigen::Index n = a.rows();
  const Matrix<Scalar> x = a - Matrix<Scalar>::Identity(n, n);
  const Real radius = spectral_norm(x);
  if (radius >= Real(1) - Real(kSeriesMargin)) {
    throw SeriesDivergence("inv_sqrt_series: ||A - I|| = " + std::to_string(radius) +
                           " is outside the convergence region");
  }

  Matrix<Scalar> sum = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> power = Matrix<Scalar>::Identity(n, n);
  Real coeff = 1;
  for (int k = 1; k <= tol.series_max_terms; ++k) {
    coeff *= (Real(-0.5) - Real(k - 1)) / Real(k);
    power = (power * x).eval();
    const Matrix<Scalar> term = coeff * power;
    sum += term;
    // Frobenius bounds the spectral norm from above.
    if (term.norm() < tol.series_term) return sum;
  }
  throw NoConvergence("inv_sqrt_series: term cap of " + std::to_string(tol.series_max_terms) +
                      " exceeded");
}

/// Number of singular values above kRankCutoff·σ_max.
template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& g) {
  detail::require_finite(g, "numerical_rank");
  if (g.size() == 0) return 0;
  using Plain = Matrix<typename Derived::Scalar>;
  Eigen::JacobiSVD<Plain> svd(g.eval());
  const auto& sv = svd.singularValues();
  if (sv(0) == 0) return 0;
  return (sv.array() > kRankCutoff * sv(0)).count();
}

/// Orthogonal projector onto the column space of G, rank decided by kRankCutoff.
template <typename Derived>
Matrix<typename Derived::Scalar> column_space_projector(const Eigen::MatrixBase<Derived>& g) {
  using Scalar = typename Derived::Scalar;
  detail::require_finite(g, "column_space_projector");
  const Eigen::Index rows = g.rows();
  Matrix<Scalar> proj = Matrix<Scalar>::Zero(rows, rows);
  if (g.size() == 0) return proj;
  Eigen::JacobiSVD<Matrix<Scalar>> svd(g.eval(), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0) return proj;
  const Eigen::Index rank = (sv.array() > kRankCutoff * sv(0)).count();
  const auto basis = svd.matrixU().leftCols(rank);
  proj = basis * basis.adjoint();
  return (proj + proj.adjoint()) / typename Derived::RealScalar(2);
}

}  // namespace gkit
