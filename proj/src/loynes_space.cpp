#include "gramian/loynes_space.hpp"

#include <algorithm>
#include <string>

namespace gkit {

namespace {

std::string describe(const SpaceShape& s) {
  return "(n=" + std::to_string(s.n) + ", d=" + std::to_string(s.d) + ")";
}

void require_same(const SpaceShape& a, const SpaceShape& b, const char* what) {
  if (!(a == b)) throw ShapeError(std::string(what) + ": " + describe(a) + " vs " + describe(b));
}

}  // namespace

void SpaceShape::validate() const {
  if (n < 1 || d < 1) throw ShapeError("space shape needs n >= 1 and d >= 1, got " + describe(*this));
}

GramianVector GramianVector::zero(const SpaceShape& shape) {
  shape.validate();
  return {shape, ComplexMatrix::Zero(shape.dim(), shape.d)};
}

GramianVector GramianVector::from_data(const SpaceShape& shape, ComplexMatrix data) {
  shape.validate();
  if (data.rows() != shape.dim() || data.cols() != shape.d) {
    throw ShapeError("vector data is " + std::to_string(data.rows()) + "x" +
                     std::to_string(data.cols()) + ", shape " + describe(shape) + " needs " +
                     std::to_string(shape.dim()) + "x" + std::to_string(shape.d));
  }
  detail::require_finite(data, "GramianVector");
  return {shape, std::move(data)};
}

GramianVector GramianVector::random(const SpaceShape& shape, Rng& rng) {
  shape.validate();
  return {shape, rng.gaussian(shape.dim(), shape.d)};
}

GramianOperator GramianOperator::identity(const SpaceShape& shape) {
  shape.validate();
  return {shape, shape, ComplexMatrix::Identity(shape.dim(), shape.dim())};
}

GramianOperator GramianOperator::zero(const SpaceShape& shape_in, const SpaceShape& shape_out) {
  shape_in.validate();
  shape_out.validate();
  if (shape_in.d != shape_out.d) throw ShapeError("operator spaces must share d");
  return {shape_in, shape_out, ComplexMatrix::Zero(shape_out.dim(), shape_in.dim())};
}

GramianOperator GramianOperator::from_data(const SpaceShape& shape_in, const SpaceShape& shape_out,
                                           ComplexMatrix data) {
  shape_in.validate();
  shape_out.validate();
  if (shape_in.d != shape_out.d) throw ShapeError("operator spaces must share d");
  if (data.rows() != shape_out.dim() || data.cols() != shape_in.dim()) {
    throw ShapeError("operator data is " + std::to_string(data.rows()) + "x" +
                     std::to_string(data.cols()) + ", expected " +
                     std::to_string(shape_out.dim()) + "x" + std::to_string(shape_in.dim()));
  }
  detail::require_finite(data, "GramianOperator");
  return {shape_in, shape_out, std::move(data)};
}

GramianOperator GramianOperator::from_data(const SpaceShape& shape, ComplexMatrix data) {
  return from_data(shape, shape, std::move(data));
}

GramianOperator operator*(const GramianOperator& lhs, const GramianOperator& rhs) {
  require_same(lhs.shape_in, rhs.shape_out, "operator product");
  return {rhs.shape_in, lhs.shape_out, lhs.data * rhs.data};
}

GramianOperator operator+(const GramianOperator& lhs, const GramianOperator& rhs) {
  require_same(lhs.shape_in, rhs.shape_in, "operator sum");
  require_same(lhs.shape_out, rhs.shape_out, "operator sum");
  return {lhs.shape_in, lhs.shape_out, lhs.data + rhs.data};
}

GramianOperator operator-(const GramianOperator& lhs, const GramianOperator& rhs) {
  require_same(lhs.shape_in, rhs.shape_in, "operator difference");
  require_same(lhs.shape_out, rhs.shape_out, "operator difference");
  return {lhs.shape_in, lhs.shape_out, lhs.data - rhs.data};
}

GramianOperator operator*(Complex scale, const GramianOperator& op) {
  return {op.shape_in, op.shape_out, scale * op.data};
}

ComplexMatrix gramian(const GramianVector& h, const GramianVector& k) {
  require_same(h.shape, k.shape, "gramian");
  return h.data.adjoint() * k.data;
}

GramianVector apply(const GramianOperator& op, const GramianVector& h) {
  require_same(op.shape_in, h.shape, "apply");
  return {op.shape_out, op.data * h.data};
}

GramianOperator adjoint(const GramianOperator& op) {
  return {op.shape_out, op.shape_in, op.data.adjoint()};
}

double op_norm(const GramianOperator& op) { return spectral_norm(op.data); }

BoundednessCertificate boundedness_certificate(const GramianOperator& op, double bound,
                                               int samples, std::uint64_t seed,
                                               const Tolerances& tol) {
  if (!(bound >= 0)) throw InvalidInput("boundedness_certificate: bound must be >= 0");
  BoundednessCertificate cert{op, bound};
  const double m2 = bound * bound;
  const Eigen::Index dim = op.shape_in.dim();
  const ComplexMatrix gram = op.data.adjoint() * op.data;
  cert.global_ok = loewner_leq(gram, m2 * ComplexMatrix::Identity(dim, dim), tol);

  Rng rng(seed);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const auto h = GramianVector::random(op.shape_in, rng);
    const ComplexMatrix lhs = gramian(apply(op, h), apply(op, h));
    const ComplexMatrix rhs = m2 * gramian(h, h);
    const auto values = eigh(rhs - lhs).values;
    worst = std::max(worst, std::max(0.0, -values(0)) / (1 + spectral_norm(rhs)));
  }
  cert.worst_residual = worst;
  cert.sampled_ok = worst <= tol.psd_abs;
  return cert;
}

ProjectionCheck is_gramian_projection(const ComplexMatrix& p, const Tolerances& tol) {
  detail::require_square(p, "is_gramian_projection");
  detail::require_finite(p, "is_gramian_projection");
  ProjectionCheck check;
  const double scale = 1 + spectral_norm(p);
  check.selfadjoint_residual = spectral_norm(p - p.adjoint()) / scale;
  check.idempotent_residual = spectral_norm(p * p - p) / scale;
  check.is_projection =
      check.selfadjoint_residual <= tol.eq_rel && check.idempotent_residual <= tol.eq_rel;
  return check;
}

ProjectionCheck is_gramian_projection(const GramianOperator& p, const Tolerances& tol) {
  if (!p.is_square()) throw ShapeError("is_gramian_projection: operator is not square");
  return is_gramian_projection(p.data, tol);
}

GramianOperator submodule_projection(std::span<const GramianVector> generators,
                                     std::optional<SpaceShape> shape) {
  if (generators.empty()) {
    if (!shape) throw ShapeError("submodule_projection: empty generator list needs a shape");
    return GramianOperator::zero(*shape, *shape);
  }
  const SpaceShape s = generators.front().shape;
  if (shape) require_same(*shape, s, "submodule_projection");
  ComplexMatrix stacked(s.dim(), Eigen::Index(s.d) * Eigen::Index(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    require_same(generators[i].shape, s, "submodule_projection");
    stacked.middleCols(Eigen::Index(i) * s.d, s.d) = generators[i].data;
  }
  return {s, s, column_space_projector(stacked)};
}

}  // namespace gkit
