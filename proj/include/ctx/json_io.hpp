#ifndef CTX_JSON_IO_HPP
#define CTX_JSON_IO_HPP

#include "ctx/analysis.hpp"
#include "ctx/bell.hpp"
#include "ctx/naimark.hpp"
#include "ctx/quantum.hpp"
#include "ctx/scenario.hpp"
#include "ctx/search.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ctx::io {

using nlohmann::json;

// Scenario file: {"vertices": [...], "edges": [[...], ...]}
json scenario_to_json(const ContextualityScenario& H);
ContextualityScenario scenario_from_json(const json& j);

// Model file: {"scenario": path-or-inline, "values": {label: "num/den"}}.
// When the caller already has the scenario, pass it and the embedded
// reference is ignored; otherwise it is resolved (paths relative to
// base_dir).
json model_to_json(const ContextualityScenario& H, const ProbabilisticModel& p,
                   const json& scenario_ref);
std::pair<ContextualityScenario, ProbabilisticModel> model_from_json(
    const json& j, const std::optional<ContextualityScenario>& scenario,
    const std::string& base_dir);

// Behavior file: {"parties": N, "settings": [...], "outcomes": [[...]],
//                 "table": {"x1,..,xN;a1,..,aN": "num/den"}}
json behavior_to_json(const BellBehavior& b);
BellBehavior behavior_from_json(const json& j);

json structure_to_json(const BellStructure& s);
BellStructure structure_from_json(const json& j);

json labeling_to_json(const BellScenario& bs);

// Realization file: {"dim": d, "rho": [[[re,im],...],...],
//                    "effects": {label: matrix}}
json cmatrix_to_json(const CMat& m);
CMat cmatrix_from_json(const json& j);
json realization_to_json(const ContextualityScenario& H, const QuantumRealization& R);
QuantumRealization realization_from_json(const ContextualityScenario& H, const json& j);

json validation_to_json(const ValidationReport& r);
json classification_to_json(const ContextualityScenario& H, const ClassificationReport& r);
json certificate_to_json(const ContextualityScenario& H, const TrivialityCertificate& c);
json projectivity_to_json(const ContextualityScenario& H, const ProjectivityReport& r);
json dilation_report_to_json(const ContextualityScenario& H,
                             const DilationConsistencyReport& r);
json search_result_to_json(const ContextualityScenario& H, const SearchResult& r);
json models_to_json(const ContextualityScenario& H,
                    const std::vector<ProbabilisticModel>& models);

/// Reads a JSON document; "-" means standard input. Parse errors surface as
/// std::runtime_error with the offending line number.
json load_json(const std::string& path);
void emit_json(const json& j, const std::string& out_path, bool pretty);

}  // namespace ctx::io

#endif
