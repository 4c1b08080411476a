#pragma once

// Partial isometry between two close projections.
//
// Given gramian selfadjoint projections P, Q on H with ‖P − Q‖ < 1, set
//
//   A = I + P(Q − P)P,   T = Q A^{-1/2} P.
//
// Then T*T = P and TT* = Q. A^{-1/2} is taken from the binomial series in
// (A − I), which converges because ‖I − A‖ ≤ ‖P − Q‖ < 1, and is cross-checked
// against the spectral inverse square root. Every intermediate identity the
// argument relies on is recorded as a relative residual in a ProofTrace.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gramian/loynes_space.hpp"
#include "gramian/partial_isometry.hpp"

namespace gkit {

/// Gaps at or above 1 − kHypothesisMargin are rejected.
inline constexpr double kHypothesisMargin = 1e-9;

struct ProofTrace {
  double a_definition = 0;        ///< A = I + P(Q−P)P
  double neumann_bound = 0;       ///< excess of ‖I − A‖ over ‖P − Q‖
  double positivity_worst = 0;    ///< [Ah,h] vs [(I−P)h,h] + [QPh,Ph], and its PSD deficit
  double positivity_global = 0;   ///< excess of 1 − ‖P − Q‖ over λ_min(A)
  double pa_commute = 0;          ///< PA = AP
  double pa_eq_pqp = 0;           ///< PA = PQP
  double sqrt_commute = 0;        ///< PA^{1/2} = A^{1/2}P and PA^{-1/2} = A^{-1/2}P
  double sqrt_squares_to_a = 0;   ///< A^{1/2}A^{1/2} = A
  double sqrt_method_agreement = 0;  ///< series vs spectral A^{-1/2}
  double tstar_formula = 0;       ///< T* = PA^{-1/2}Q = A^{-1/2}PQ = PT*
  double tp_eq_t = 0;             ///< TP = T = QPA^{-1/2}
  double tstar_t_eq_p = 0;        ///< T*T = P
  double t_tstar_formula = 0;     ///< TT* = QA^{-1}PQ
  double t_tstar_eq_q = 0;        ///< TT* = Q
  double t_tstar_leq_q = 0;       ///< Loewner deficit of TT* ≤ Q
  double complement_leq = 0;      ///< Loewner deficit of I − TT* ≤ I − Q
  double implication_chain = 0;   ///< ‖Qh‖/‖h‖ over sampled h with TT*h = 0

  struct Entry {
    std::string_view name;
    double value;
  };
  /// Residuals in a fixed order with their serialized names.
  std::vector<Entry> entries() const;
  /// Sets a residual by serialized name; false if the name is unknown.
  bool set(std::string_view name, double value);
  double worst() const;
};

struct ConstructionResult {
  GramianOperator p;
  GramianOperator q;
  GramianOperator t;
  GramianOperator a;
  GramianOperator sqrt_a;
  GramianOperator inv_sqrt_a;  ///< from the binomial series
  double gap = 0;              ///< ‖P − Q‖
  int samples = 0;
  std::uint64_t seed = 0;
  ProofTrace trace;
  ClassificationReport classification;
};

/// Builds T = QA^{-1/2}P and certifies it.
///
/// Throws InvalidProjection if P or Q is not a gramian selfadjoint projection,
/// ShapeError on mismatched shapes, HypothesisViolated when
/// ‖P − Q‖ ≥ 1 − kHypothesisMargin, and NumericError if the finished trace or
/// classification does not certify the result.
ConstructionResult build(const GramianOperator& p, const GramianOperator& q,
                         const Tolerances& tol = {}, int samples = 32, std::uint64_t seed = 0);

struct TraceVerdict {
  bool passed = false;
  std::string worst;  ///< name of the largest residual
  double worst_value = 0;
  std::vector<std::string> failing;  ///< every residual above eq_rel
};

/// Recomputes every trace residual from the operators stored in `result`.
TraceVerdict verify_trace(const ConstructionResult& result, const Tolerances& tol = {});

/// Residual trace for an arbitrary set of operators, using `samples` vectors
/// drawn from `seed`.
ProofTrace compute_trace(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& a,
                         const ComplexMatrix& sqrt_a, const ComplexMatrix& inv_sqrt_a,
                         const ComplexMatrix& t, const SpaceShape& shape, int samples,
                         std::uint64_t seed, const Tolerances& tol = {});

}  // namespace gkit
