#include "gramian/partial_isometry.hpp"

#include <algorithm>
#include <array>

namespace gkit {

namespace {

ConditionResiduals evaluate(const ComplexMatrix& t, const Tolerances& tol) {
  ConditionResiduals r;
  r.source_gram = is_gramian_projection(ComplexMatrix(t.adjoint() * t), tol);
  r.target_gram = is_gramian_projection(ComplexMatrix(t * t.adjoint()), tol);
  r.cstar_residual = spectral_norm(t * t.adjoint() * t - t) / (1 + spectral_norm(t));
  r.cstar_ok = r.cstar_residual <= tol.eq_rel;
  return r;
}

bool all_hold(const ConditionResiduals& r) {
  return r.source_gram.is_projection && r.target_gram.is_projection && r.cstar_ok;
}

std::array<double, 5> residual_list(const ConditionResiduals& r) {
  return {r.source_gram.selfadjoint_residual, r.source_gram.idempotent_residual,
          r.target_gram.selfadjoint_residual, r.target_gram.idempotent_residual,
          r.cstar_residual};
}

}  // namespace

double ClassificationReport::worst_condition_residual() const {
  double worst = 0;
  for (double v : residual_list(direct)) worst = std::max(worst, v);
  for (double v : residual_list(adjoint)) worst = std::max(worst, v);
  return worst;
}

ClassificationReport classify(const GramianOperator& op, const Tolerances& tol) {
  tol.validate();
  ClassificationReport rep;
  rep.direct = evaluate(op.data, tol);
  rep.adjoint = evaluate(op.data.adjoint(), tol);

  rep.cond_ii = rep.direct.source_gram.is_projection;
  rep.cond_iii = rep.direct.target_gram.is_projection;
  rep.cond_cstar = rep.direct.cstar_ok;
  rep.cond_iv = all_hold(rep.adjoint);

  const std::array verdicts{rep.cond_ii, rep.cond_iii, rep.cond_cstar, rep.cond_iv};
  rep.is_partial_isometry = std::ranges::all_of(verdicts, [](bool v) { return v; });
  rep.consistent = std::ranges::all_of(verdicts, [&](bool v) { return v == verdicts[0]; });

  auto near_threshold = [&](double r) { return r > tol.eq_rel / 10 && r < tol.eq_rel * 10; };
  // Gram residuals scale with σ² and the C*-residual with σ for small singular
  // values σ, so a disagreement between verdicts is itself a threshold effect.
  rep.marginal = !rep.consistent ||
                 std::ranges::any_of(residual_list(rep.direct), near_threshold) ||
                 std::ranges::any_of(residual_list(rep.adjoint), near_threshold);

  const GramianOperator star = adjoint(op);
  rep.initial_projection = star * op;
  rep.final_projection = op * star;

  // Kernel and range from the SVD numerical rank, independent of T*T and TT*.
  const ComplexMatrix coinitial = column_space_projector(op.data.adjoint());
  const Eigen::Index in_dim = op.shape_in.dim();
  rep.kernel_projection = {op.shape_in, op.shape_in,
                           ComplexMatrix::Identity(in_dim, in_dim) - coinitial};
  rep.range_projection = {op.shape_out, op.shape_out, column_space_projector(op.data)};
  rep.initial_agreement = relative_residual(rep.initial_projection.data, coinitial);
  rep.final_agreement = relative_residual(rep.final_projection.data, rep.range_projection.data);
  rep.rank = static_cast<long>(numerical_rank(op.data));
  return rep;
}

GramianOperator initial_projection(const GramianOperator& op, const Tolerances& tol) {
  const auto rep = classify(op, tol);
  if (!rep.is_partial_isometry) {
    throw NotPartialIsometry("initial_projection: operator is not a partial gramian isometry");
  }
  if (rep.initial_agreement > tol.eq_rel) {
    throw NumericError("initial_projection: T*T disagrees with the SVD projection onto N(T)^perp");
  }
  return rep.initial_projection;
}

GramianOperator final_projection(const GramianOperator& op, const Tolerances& tol) {
  const auto rep = classify(op, tol);
  if (!rep.is_partial_isometry) {
    throw NotPartialIsometry("final_projection: operator is not a partial gramian isometry");
  }
  if (rep.final_agreement > tol.eq_rel) {
    throw NumericError("final_projection: TT* disagrees with the SVD projection onto R(T)");
  }
  return rep.final_projection;
}

}  // namespace gkit
