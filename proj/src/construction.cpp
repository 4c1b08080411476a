#include "gramian/construction.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace gkit {

namespace {

using Member = double ProofTrace::*;

constexpr std::array<std::pair<std::string_view, Member>, 17> kTraceFields{{
    {"A_definition", &ProofTrace::a_definition},
    {"neumann_bound", &ProofTrace::neumann_bound},
    {"positivity_worst", &ProofTrace::positivity_worst},
    {"positivity_global", &ProofTrace::positivity_global},
    {"PA_commute", &ProofTrace::pa_commute},
    {"PA_eq_PQP", &ProofTrace::pa_eq_pqp},
    {"sqrt_commute", &ProofTrace::sqrt_commute},
    {"sqrt_squares_to_A", &ProofTrace::sqrt_squares_to_a},
    {"sqrt_method_agreement", &ProofTrace::sqrt_method_agreement},
    {"Tstar_formula", &ProofTrace::tstar_formula},
    {"TP_eq_T", &ProofTrace::tp_eq_t},
    {"TstarT_eq_P", &ProofTrace::tstar_t_eq_p},
    {"TTstar_formula", &ProofTrace::t_tstar_formula},
    {"TTstar_eq_Q", &ProofTrace::t_tstar_eq_q},
    {"TTstar_leq_Q", &ProofTrace::t_tstar_leq_q},
    {"complement_leq", &ProofTrace::complement_leq},
    {"implication_chain", &ProofTrace::implication_chain},
}};

double rel(const ComplexMatrix& x, const ComplexMatrix& y) { return relative_residual(x, y); }

}  // namespace

std::vector<ProofTrace::Entry> ProofTrace::entries() const {
  std::vector<Entry> out;
  out.reserve(kTraceFields.size());
  for (const auto& [name, member] : kTraceFields) out.push_back({name, this->*member});
  return out;
}

bool ProofTrace::set(std::string_view name, double value) {
  for (const auto& [field, member] : kTraceFields) {
    if (field == name) {
      this->*member = value;
      return true;
    }
  }
  return false;
}

double ProofTrace::worst() const {
  double w = 0;
  for (const auto& e : entries()) w = std::max(w, e.value);
  return w;
}

ProofTrace compute_trace(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& a,
                         const ComplexMatrix& sqrt_a, const ComplexMatrix& inv_sqrt_a,
                         const ComplexMatrix& t, const SpaceShape& shape, int samples,
                         std::uint64_t seed, const Tolerances& tol) {
  const Eigen::Index n = p.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix t_star = t.adjoint();
  const ComplexMatrix t_tstar = t * t_star;
  const double gap = spectral_norm(p - q);

  ProofTrace tr;
  tr.a_definition = rel(a, id + p * (q - p) * p);
  tr.neumann_bound = std::max(0.0, spectral_norm(id - a) - gap) / (1 + gap);

  const auto a_spectrum = eigh(a).values;
  tr.positivity_global = std::max(0.0, (1 - gap) - a_spectrum(0));

  Rng rng(seed);
  Rng form_stream = rng.split(0);
  double positivity = 0;
  for (int s = 0; s < samples; ++s) {
    const auto h = GramianVector::random(shape, form_stream);
    const GramianVector ah{shape, a * h.data};
    const GramianVector ph{shape, p * h.data};
    const GramianVector complement{shape, h.data - ph.data};
    const GramianVector qph{shape, q * ph.data};
    const ComplexMatrix form = gramian(ah, h);
    const ComplexMatrix split = gramian(complement, h) + gramian(qph, ph);
    const double scale = 1 + spectral_norm(gramian(h, h));
    const double deficit = std::max(0.0, -eigh(form).values(0));
    positivity = std::max({positivity, spectral_norm(form - split) / scale, deficit / scale});
  }
  tr.positivity_worst = positivity;

  tr.pa_commute = rel(p * a, a * p);
  tr.pa_eq_pqp = rel(p * a, p * q * p);
  tr.sqrt_commute = std::max(rel(p * sqrt_a, sqrt_a * p), rel(p * inv_sqrt_a, inv_sqrt_a * p));
  tr.sqrt_squares_to_a = rel(sqrt_a * sqrt_a, a);
  try {
    tr.sqrt_method_agreement = rel(inv_sqrt_a, inv_sqrt_spectral(a, tol));
  } catch (const NotPositive&) {
    tr.sqrt_method_agreement = 1;
  }

  tr.tstar_formula = std::max({rel(t_star, p * inv_sqrt_a * q), rel(t_star, inv_sqrt_a * p * q),
                               rel(p * t_star, t_star)});
  tr.tp_eq_t = std::max(rel(t * p, t), rel(t, q * p * inv_sqrt_a));
  tr.tstar_t_eq_p = rel(t_star * t, p);
  tr.t_tstar_formula = rel(t_tstar, q * inv_sqrt_a * inv_sqrt_a * p * q);
  tr.t_tstar_eq_q = rel(t_tstar, q);
  tr.t_tstar_leq_q = loewner_deficit(t_tstar, q);
  tr.complement_leq = loewner_deficit(ComplexMatrix(id - t_tstar), ComplexMatrix(id - q));

  // Vectors annihilated by TT* must be annihilated by Q.
  Rng chain_stream = rng.split(1);
  double chain = 0;
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix h = chain_stream.gaussian(shape.dim(), shape.d);
    const ComplexMatrix kernel_part = h - t_tstar * h;
    const double size = kernel_part.norm();
    if (size > 0) chain = std::max(chain, (q * kernel_part).norm() / size);
  }
  tr.implication_chain = chain;
  return tr;
}

ConstructionResult build(const GramianOperator& p, const GramianOperator& q, const Tolerances& tol,
                         int samples, std::uint64_t seed) {
  tol.validate();
  if (!p.is_square() || !q.is_square()) throw ShapeError("build: P and Q must be square");
  if (!(p.shape_in == q.shape_in)) throw ShapeError("build: P and Q act on different spaces");
  if (!is_gramian_projection(p, tol)) throw InvalidProjection("build: P is not a gramian selfadjoint projection");
  if (!is_gramian_projection(q, tol)) throw InvalidProjection("build: Q is not a gramian selfadjoint projection");

  const SpaceShape shape = p.shape_in;
  const double gap = spectral_norm(p.data - q.data);
  if (gap >= 1 - kHypothesisMargin) throw HypothesisViolated(gap);

  const Eigen::Index n = shape.dim();
  const ComplexMatrix& pm = p.data;
  const ComplexMatrix& qm = q.data;
  const ComplexMatrix a = ComplexMatrix::Identity(n, n) + pm * (qm - pm) * pm;
  const ComplexMatrix inv_sqrt_a = inv_sqrt_series(a, tol);
  const ComplexMatrix sqrt_a = sqrt_psd(a, tol);
  const ComplexMatrix t = qm * inv_sqrt_a * pm;

  ConstructionResult res{p, q,
                         {shape, shape, t},
                         {shape, shape, a},
                         {shape, shape, sqrt_a},
                         {shape, shape, inv_sqrt_a},
                         gap, samples, seed, {}, {}};
  res.trace = compute_trace(pm, qm, a, sqrt_a, inv_sqrt_a, t, shape, samples, seed, tol);
  res.classification = classify(res.t, tol);

  if (res.trace.worst() > tol.eq_rel) {
    const auto verdict = verify_trace(res, tol);
    throw NumericError("build: proof trace residual " + verdict.worst + " = " +
                       std::to_string(verdict.worst_value) + " exceeds eq_rel");
  }
  if (!res.classification.is_partial_isometry) {
    throw NumericError("build: constructed T does not classify as a partial isometry");
  }
  return res;
}

TraceVerdict verify_trace(const ConstructionResult& result, const Tolerances& tol) {
  const ProofTrace tr = compute_trace(result.p.data, result.q.data, result.a.data,
                                      result.sqrt_a.data, result.inv_sqrt_a.data, result.t.data,
                                      result.p.shape_in, result.samples, result.seed, tol);
  TraceVerdict v;
  v.worst_value = -1;
  for (const auto& e : tr.entries()) {
    if (e.value > v.worst_value) {
      v.worst_value = e.value;
      v.worst = std::string(e.name);
    }
    if (!(e.value <= tol.eq_rel)) v.failing.emplace_back(e.name);
  }
  v.passed = v.failing.empty();
  return v;
}

}  // namespace gkit
