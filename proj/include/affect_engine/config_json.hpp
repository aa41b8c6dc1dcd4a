#pragma once

#include <string>
#include <vector>

#include "affect_engine/scenario.hpp"

namespace affect_engine {

/// Parses a JSON document holding either one scenario object or an array of
/// them. Unknown keys are rejected; every returned configuration has passed
/// validate_config. Throws ParseError (malformed JSON, wrong types, unknown
/// keys) or ConfigError (invariant violations).
std::vector<ScenarioConfig> parse_config_text(const std::string& text);

/// Reads the file and delegates to parse_config_text. Throws IoError when
/// the file cannot be read.
std::vector<ScenarioConfig> parse_config_file(const std::string& path);

/// Serializes configurations with every default filled in. Feeding the
/// result back through parse_config_text yields the same configurations
/// (emission is a fixed point).
std::string resolved_config_json(const std::vector<ScenarioConfig>& configs);

} // namespace affect_engine
