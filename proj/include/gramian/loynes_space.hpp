#pragma once

// Finite model of a pseudo-Hilbert (Loynes) space: H = Z^n over the C*-algebra
// Z = M_d(C). An element of H is stored as n stacked d×d blocks, i.e. an
// (n·d)×d matrix; Z acts by right multiplication. The Z-valued inner product
// is [h, k] = h* k, conjugate-linear in the first argument, so [h, h] is PSD
// in Z directly.
//
// Module maps H → K (right Z-linear) are exactly left multiplications by
// (n_K·d)×(n_H·d) matrices. Every such map is adjointable and bounded, so the
// classes L, B, L*, B* all coincide in this model.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gramian/matrix_core.hpp"
#include "gramian/random.hpp"

namespace gkit {

struct SpaceShape {
  int n = 1;  ///< module rank
  int d = 1;  ///< matrix-algebra degree

  Eigen::Index dim() const noexcept { return Eigen::Index(n) * d; }
  void validate() const;
  friend bool operator==(const SpaceShape&, const SpaceShape&) = default;
};

struct GramianVector {
  SpaceShape shape;
  ComplexMatrix data;  ///< (n·d)×d

  static GramianVector zero(const SpaceShape& shape);
  static GramianVector from_data(const SpaceShape& shape, ComplexMatrix data);
  static GramianVector random(const SpaceShape& shape, Rng& rng);
};

struct GramianOperator {
  SpaceShape shape_in;
  SpaceShape shape_out;
  ComplexMatrix data;  ///< (n_out·d)×(n_in·d)

  bool is_square() const noexcept { return shape_in == shape_out; }

  static GramianOperator identity(const SpaceShape& shape);
  static GramianOperator zero(const SpaceShape& shape_in, const SpaceShape& shape_out);
  static GramianOperator from_data(const SpaceShape& shape_in, const SpaceShape& shape_out,
                                   ComplexMatrix data);
  /// Square operator on `shape`.
  static GramianOperator from_data(const SpaceShape& shape, ComplexMatrix data);
};

GramianOperator operator*(const GramianOperator& lhs, const GramianOperator& rhs);
GramianOperator operator+(const GramianOperator& lhs, const GramianOperator& rhs);
GramianOperator operator-(const GramianOperator& lhs, const GramianOperator& rhs);
GramianOperator operator*(Complex scale, const GramianOperator& op);

/// Z-valued inner product [h, k] = h* k (a d×d matrix).
ComplexMatrix gramian(const GramianVector& h, const GramianVector& k);

GramianVector apply(const GramianOperator& op, const GramianVector& h);

GramianOperator adjoint(const GramianOperator& op);

/// inf{M : [Th, Th] ≤ M²[h, h] for all h}; equals the largest singular value.
double op_norm(const GramianOperator& op);

struct BoundednessCertificate {
  GramianOperator op;
  double bound = 0;
  bool global_ok = false;   ///< T*T ≤ M²·I in the Loewner order
  bool sampled_ok = false;  ///< M²[h,h] − [Th,Th] PSD on every sampled h
  double worst_residual = 0;  ///< largest relative eigenvalue deficit seen on samples
};

/// Checks [Th, Th] ≤ M²[h, h] globally and on `samples` random vectors.
/// Failures are reported in the certificate, never thrown.
BoundednessCertificate boundedness_certificate(const GramianOperator& op, double bound,
                                               int samples, std::uint64_t seed,
                                               const Tolerances& tol = {});

struct ProjectionCheck {
  bool is_projection = false;
  double selfadjoint_residual = 0;  ///< ‖P − P*‖ / (1 + ‖P‖)
  double idempotent_residual = 0;   ///< ‖P² − P‖ / (1 + ‖P‖)

  explicit operator bool() const noexcept { return is_projection; }
};

ProjectionCheck is_gramian_projection(const GramianOperator& p, const Tolerances& tol = {});
ProjectionCheck is_gramian_projection(const ComplexMatrix& p, const Tolerances& tol = {});

/// Projection onto the submodule generated by `generators`. An empty list
/// needs `shape` and yields the zero projection.
GramianOperator submodule_projection(std::span<const GramianVector> generators,
                                     std::optional<SpaceShape> shape = std::nullopt);

}  // namespace gkit
