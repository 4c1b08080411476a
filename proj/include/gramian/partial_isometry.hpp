#pragma once

#include "gramian/loynes_space.hpp"

namespace gkit {

/// Residuals of one operator against the partial-isometry characterizations:
/// T*T a projection, TT* a projection, and TT*T = T.
struct ConditionResiduals {
  ProjectionCheck source_gram;  ///< T*T
  ProjectionCheck target_gram;  ///< TT*
  double cstar_residual = 0;    ///< ‖TT*T − T‖ / (1 + ‖T‖)
  bool cstar_ok = false;
};

struct ClassificationReport {
  bool is_partial_isometry = false;
  /// Every verdict agreed. A false value indicates an input sitting on the
  /// numerical threshold, never a mathematical disagreement.
  bool consistent = true;
  /// Some condition residual lies within a factor of 10 of eq_rel, or the
  /// verdicts disagree.
  bool marginal = false;

  bool cond_ii = false;   ///< T*T is a gramian selfadjoint projection
  bool cond_iii = false;  ///< TT* is a gramian selfadjoint projection
  bool cond_cstar = false;  ///< TT*T = T
  bool cond_iv = false;   ///< T* passes the same tests

  ConditionResiduals direct;   ///< conditions evaluated on T
  ConditionResiduals adjoint;  ///< conditions evaluated on T*

  GramianOperator initial_projection;  ///< T*T
  GramianOperator final_projection;    ///< TT*
  GramianOperator kernel_projection;   ///< onto N(T), from the SVD of T*
  GramianOperator range_projection;    ///< onto R(T), from the SVD of T

  double initial_agreement = 0;  ///< ‖T*T − (I − kernel_projection)‖ relative
  double final_agreement = 0;    ///< ‖TT* − range_projection‖ relative
  long rank = 0;  ///< numerical rank of T

  double worst_condition_residual() const;
};

/// Classifies T through all equivalent characterizations and reports every
/// residual. Never throws on well-formed input.
ClassificationReport classify(const GramianOperator& op, const Tolerances& tol = {});

/// T*T, checked against the SVD projection onto N(T)^⊥.
/// Throws NotPartialIsometry when classify() rejects T.
GramianOperator initial_projection(const GramianOperator& op, const Tolerances& tol = {});

/// TT*, checked against the SVD projection onto R(T).
GramianOperator final_projection(const GramianOperator& op, const Tolerances& tol = {});

}  // namespace gkit
