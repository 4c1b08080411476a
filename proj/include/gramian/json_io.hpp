#pragma once

// JSON wire formats.
//
//   matrix:    {"rows": r, "cols": c, "re": [[...], ...], "im": [[...], ...]}
//              row-major; "im" may be omitted for real data.
//   vector:    matrix fields plus {"n": n, "d": d}; rows = n·d, cols = d.
//   operator:  matrix fields plus {"n": n_in, "d": d} and optional "n_out"
//              (defaults to n); rows = n_out·d, cols = n_in·d.
//
// Doubles are written in shortest round-trip form, so dump(parse(s)) == s for
// anything this module produced. Loading reports schema problems as
// InvalidInput and dimension disagreements as ShapeError.

#include <string>

#include <json.hpp>

#include "gramian/construction.hpp"
#include "gramian/lab.hpp"
#include "gramian/loynes_space.hpp"
#include "gramian/partial_isometry.hpp"

namespace gkit {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json vector_to_json(const GramianVector& h);
GramianVector vector_from_json(const json& j);

json operator_to_json(const GramianOperator& op);
GramianOperator operator_from_json(const json& j);

json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const json& j);

json trace_to_json(const ProofTrace& trace);
ProofTrace trace_from_json(const json& j);

json report_to_json(const ClassificationReport& rep);
json certificate_to_json(const BoundednessCertificate& cert);

json construction_to_json(const ConstructionResult& res, const Tolerances& tol);
/// Restores a construction; the classification is recomputed from T with the
/// stored tolerances.
ConstructionResult construction_from_json(const json& j);

json pair_to_json(const ProjectionPair& pair);
json remark_to_json(const RemarkExample& ex, const Tolerances& tol);

json suite_config_to_json(const SuiteConfig& config);
json suite_report_to_json(const SuiteReport& report, const SuiteConfig& config);

/// Parses text, rethrowing syntax errors as InvalidInput.
json parse_json(const std::string& text);
/// Two-space indented text with a trailing newline.
std::string dump(const json& j);

}  // namespace gkit
