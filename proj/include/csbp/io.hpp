#pragma once

#include <string>

#include <json.hpp>

#include "csbp/criteria.hpp"
#include "csbp/generator.hpp"
#include "csbp/ineqlab.hpp"
#include "csbp/model.hpp"
#include "csbp/montecarlo.hpp"

namespace csbp {

using json = nlohmann::json;

// flat object with exactly the 20 parameter keys; a missing or unknown key is
// a ConfigError naming it
ModelParams params_from_json(const json& j);
json params_to_json(const ModelParams& p);
ModelParams load_params_file(const std::string& path);

json to_json(const McEstimate& e);
json to_json(const RegimeReport& r);
json to_json(const BoundReport& r);
json to_json(const IneqReport& r);

// write temp file in the target directory, then rename over the destination
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace csbp
