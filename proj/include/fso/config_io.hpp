#ifndef FSO_CONFIG_IO_HPP
#define FSO_CONFIG_IO_HPP

#include <string>

#include "fso/scenario.hpp"

namespace fso {

/// Parses a scenario from TOML text. Only the subset the config schema needs
/// is supported: `[section]` headers, `key = value` pairs with number,
/// boolean, or double-quoted string values, and `#` comments. Unknown keys
/// are rejected so typos fail loudly. Omitted keys keep their defaults; a
/// `preset` key in [channel] applies first so individual fields can
/// override it.
ScenarioConfig parse_scenario_toml(const std::string& text);

ScenarioConfig load_scenario_toml(const std::string& path);

/// Serializes every resolved field; parsing the result reproduces the
/// config exactly (doubles are written round-trip safe).
std::string scenario_to_toml(const ScenarioConfig& config);

void save_scenario_toml(const ScenarioConfig& config, const std::string& path);

}  // namespace fso

#endif
