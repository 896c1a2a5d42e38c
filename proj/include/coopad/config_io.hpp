#pragma once

#include <json.hpp>

#include "coopad/model.hpp"

namespace coopad {

/// Parses and validates a raw JSON configuration. Omitted fields take the
/// base-case defaults (q2 has no default and is required for scenario II).
/// Every problem found is reported in a single ConfigError.
ScenarioConfig validate_config(const nlohmann::json& raw);

nlohmann::json to_json(const ScenarioConfig& config);
nlohmann::json to_json(const QualitySchedule& schedule);

/// Parses one schedule object; violations are appended under `field`.
std::optional<QualitySchedule> parse_schedule(const nlohmann::json& j, const std::string& field,
                                              std::vector<Violation>& violations);

}  // namespace coopad
