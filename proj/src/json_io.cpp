#include "gramian/json_io.hpp"

#include <cmath>

namespace gkit {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("field \"") + key + "\": " + e.what());
  }
}

json real_rows(const ComplexMatrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(imag ? m(i, k).imag() : m(i, k).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

void read_part(const json& rows, Eigen::Index r, Eigen::Index c, ComplexMatrix& m, bool imag,
               const char* key) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != r) {
    throw ShapeError(std::string("\"") + key + "\" must hold " + std::to_string(r) + " rows");
  }
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      throw ShapeError(std::string("\"") + key + "\" row " + std::to_string(i) + " must hold " +
                       std::to_string(c) + " entries");
    }
    for (Eigen::Index k = 0; k < c; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw InvalidInput(std::string("\"") + key + "\" entries must be numbers");
      const double x = v.get<double>();
      if (imag) {
        m(i, k).imag(x);
      } else {
        m(i, k).real(x);
      }
    }
  }
}

SpaceShape shape_from(const json& j, const char* n_key) {
  SpaceShape s{field<int>(j, n_key), field<int>(j, "d")};
  s.validate();
  return s;
}

json decision_to_json(const ProjectionCheck& c) {
  return {{"is_projection", c.is_projection},
          {"selfadjoint_residual", c.selfadjoint_residual},
          {"idempotent_residual", c.idempotent_residual}};
}

json conditions_to_json(const ConditionResiduals& r) {
  return {{"gram_source", decision_to_json(r.source_gram)},
          {"gram_target", decision_to_json(r.target_gram)},
          {"cstar_residual", r.cstar_residual},
          {"cstar_ok", r.cstar_ok}};
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = field<long long>(j, "rows");
  const auto cols = field<long long>(j, "cols");
  if (rows < 0 || cols < 0) throw InvalidInput("matrix dimensions must be non-negative");
  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  if (!j.contains("re")) throw InvalidInput("missing field \"re\"");
  read_part(j.at("re"), rows, cols, m, false, "re");
  if (j.contains("im")) read_part(j.at("im"), rows, cols, m, true, "im");
  if (!m.allFinite()) throw InvalidInput("matrix has non-finite entries");
  return m;
}

json vector_to_json(const GramianVector& h) {
  json j = matrix_to_json(h.data);
  j["n"] = h.shape.n;
  j["d"] = h.shape.d;
  return j;
}

GramianVector vector_from_json(const json& j) {
  return GramianVector::from_data(shape_from(j, "n"), matrix_from_json(j));
}

json operator_to_json(const GramianOperator& op) {
  json j = matrix_to_json(op.data);
  j["n"] = op.shape_in.n;
  j["d"] = op.shape_in.d;
  if (op.shape_out.n != op.shape_in.n) j["n_out"] = op.shape_out.n;
  return j;
}

GramianOperator operator_from_json(const json& j) {
  const SpaceShape in = shape_from(j, "n");
  const SpaceShape out = j.contains("n_out") ? shape_from(j, "n_out") : in;
  return GramianOperator::from_data(in, out, matrix_from_json(j));
}

json tolerances_to_json(const Tolerances& tol) {
  return {{"eq_rel", tol.eq_rel},
          {"psd_abs", tol.psd_abs},
          {"series_term", tol.series_term},
          {"series_max_terms", tol.series_max_terms}};
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances tol{field<double>(j, "eq_rel"), field<double>(j, "psd_abs"),
                 field<double>(j, "series_term"), field<int>(j, "series_max_terms")};
  tol.validate();
  return tol;
}

json trace_to_json(const ProofTrace& trace) {
  json j = json::object();
  for (const auto& e : trace.entries()) j[std::string(e.name)] = e.value;
  return j;
}

ProofTrace trace_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("trace must be an object");
  ProofTrace trace;
  for (const auto& e : trace.entries()) {
    trace.set(e.name, field<double>(j, std::string(e.name).c_str()));
  }
  return trace;
}

json report_to_json(const ClassificationReport& rep) {
  return {
      {"is_partial_isometry", rep.is_partial_isometry},
      {"consistent", rep.consistent},
      {"marginal", rep.marginal},
      {"conditions",
       {{"ii_gram_TstarT_projection", rep.cond_ii},
        {"iii_gram_TTstar_projection", rep.cond_iii},
        {"cstar_TTstarT_eq_T", rep.cond_cstar},
        {"iv_adjoint_partial_isometry", rep.cond_iv}}},
      {"residuals", {{"direct", conditions_to_json(rep.direct)}, {"adjoint", conditions_to_json(rep.adjoint)}}},
      {"worst_condition_residual", rep.worst_condition_residual()},
      {"initial_agreement", rep.initial_agreement},
      {"final_agreement", rep.final_agreement},
      {"rank", rep.rank},
      {"rank_cutoff", kRankCutoff},
      {"initial_projection", operator_to_json(rep.initial_projection)},
      {"final_projection", operator_to_json(rep.final_projection)},
      {"kernel_projection", operator_to_json(rep.kernel_projection)},
      {"range_projection", operator_to_json(rep.range_projection)},
  };
}

json certificate_to_json(const BoundednessCertificate& cert) {
  return {{"bound", cert.bound},
          {"global_ok", cert.global_ok},
          {"sampled_ok", cert.sampled_ok},
          {"worst_residual", cert.worst_residual},
          {"operator", operator_to_json(cert.op)}};
}

json construction_to_json(const ConstructionResult& res, const Tolerances& tol) {
  return {{"gap", res.gap},
          {"samples", res.samples},
          {"seed", res.seed},
          {"tolerances", tolerances_to_json(tol)},
          {"P", operator_to_json(res.p)},
          {"Q", operator_to_json(res.q)},
          {"T", operator_to_json(res.t)},
          {"A", operator_to_json(res.a)},
          {"sqrtA", operator_to_json(res.sqrt_a)},
          {"inv_sqrtA", operator_to_json(res.inv_sqrt_a)},
          {"trace", trace_to_json(res.trace)},
          {"trace_worst", res.trace.worst()},
          {"classification", report_to_json(res.classification)}};
}

ConstructionResult construction_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("construction result must be an object");
  const Tolerances tol = j.contains("tolerances") ? tolerances_from_json(j.at("tolerances")) : Tolerances{};
  auto op = [&](const char* key) {
    if (!j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
    return operator_from_json(j.at(key));
  };
  ConstructionResult res{op("P"), op("Q"), op("T"), op("A"), op("sqrtA"), op("inv_sqrtA"), 0, 0, 0, {}, {}};
  res.gap = field<double>(j, "gap");
  res.samples = field<int>(j, "samples");
  res.seed = field<std::uint64_t>(j, "seed");
  if (!j.contains("trace")) throw InvalidInput("missing field \"trace\"");
  res.trace = trace_from_json(j.at("trace"));
  res.classification = classify(res.t, tol);
  return res;
}

json pair_to_json(const ProjectionPair& pair) {
  return {{"P", operator_to_json(pair.p)}, {"Q", operator_to_json(pair.q)}, {"gap", pair.gap}};
}

json remark_to_json(const RemarkExample& ex, const Tolerances& tol) {
  const auto rep = classify(ex.t, tol);
  return {{"P", operator_to_json(ex.p)},
          {"Q", operator_to_json(ex.q)},
          {"T", operator_to_json(ex.t)},
          {"gap", ex.gap},
          {"build_rejected", ex.build_rejected},
          {"T_is_partial_isometry", rep.is_partial_isometry},
          {"TstarT_eq_P", relative_residual(rep.initial_projection.data, ex.p.data)},
          {"TTstar_eq_Q", relative_residual(rep.final_projection.data, ex.q.data)}};
}

json suite_config_to_json(const SuiteConfig& config) {
  json shapes = json::array();
  for (const auto& s : config.shapes) shapes.push_back({{"n", s.n}, {"d", s.d}});
  return {{"trials", config.trials},
          {"seed", config.seed},
          {"samples", config.samples},
          {"shapes", shapes},
          {"gaps", config.gaps},
          {"tolerances", tolerances_to_json(config.tol)}};
}

json suite_report_to_json(const SuiteReport& report, const SuiteConfig& config) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"trial", f.trial},
                        {"seed", f.seed},
                        {"n", f.shape.n},
                        {"d", f.shape.d},
                        {"gap", f.gap},
                        {"reason", f.reason}});
  }
  return {{"config", suite_config_to_json(config)},
          {"trials", report.trials},
          {"passes", report.passes},
          {"hypothesis_failures", report.hypothesis_failures},
          {"unexpected_failures", report.unexpected_failures},
          {"worst_residuals", report.worst_residuals},
          {"failing_seeds", report.failing_seeds()},
          {"failures", failures}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gkit
