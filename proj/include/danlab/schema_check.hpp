#pragma once

#include <string>

#include <json.hpp>

namespace danlab {

// Structural validation against the subset of JSON Schema used by the
// schemas/ directory: "type", "required", "properties", "items", "enum".
// Returns false and fills *error with a path-qualified message on mismatch.
bool schema_validate(const nlohmann::ordered_json& doc, const nlohmann::ordered_json& schema,
                     std::string* error);

}  // namespace danlab
