#pragma once

#include <optional>
#include <string>

#include "json.hpp"

namespace pcm::cli {

/// One schema violation: a dotted field path ("classify.alpha[1]") and what is wrong.
struct SchemaError {
    std::string path;
    std::string message;
};

/// Validator for the subset of JSON Schema the config schema uses: type, enum,
/// properties, required, additionalProperties (boolean), items, minItems,
/// minLength, minimum, maximum, exclusiveMinimum, exclusiveMaximum and local
/// "#/$defs/..." references. Returns the first violation in document order.
std::optional<SchemaError> validate(const nlohmann::json& schema, const nlohmann::json& instance);

/// The published config schema, embedded at build time.
const nlohmann::json& config_schema();
const char* config_schema_text();

}  // namespace pcm::cli
