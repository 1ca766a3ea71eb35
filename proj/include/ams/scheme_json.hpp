#pragma once

#include <string>

#include <json.hpp>

#include "ams/synthesis.hpp"

namespace ams {

// JSON document for a SchemeSpec; lattice arrays are flat, row-major
// [component][t][x]. Doubles are emitted in shortest round-trip form, so
// save/load reproduces the scheme bit-exactly.
nlohmann::json scheme_to_json(const SchemeSpec& scheme);
SchemeSpec scheme_from_json(const nlohmann::json& j);

void save_scheme(const SchemeSpec& scheme, const std::string& path);
SchemeSpec load_scheme(const std::string& path);

}  // namespace ams
