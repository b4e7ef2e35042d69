#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ffr/engine.hpp"

namespace ffr {

/// INI scenario file: [radio] [plan] [layout] [traffic] [engine] [run].
/// Omitted keys keep their defaults. Unknown sections or keys, malformed
/// numbers and wrong unit suffixes throw ParseError with the line number;
/// a config that parses but breaks a constraint throws ValidationError.
ScenarioConfig parse_config(std::istream& in, bool validate = true);
ScenarioConfig load_config(const std::string& path, bool validate = true);

/// Every key with its current value; parse_config reads it back unchanged.
std::string emit_config(const ScenarioConfig& config);

/// "section.key=value". Throws ParseError for unknown keys or bad values.
void apply_override(ScenarioConfig& config, const std::string& assignment);

/// Findings for a parsed config: {"OK"} when clean, otherwise entries such
/// as "alignment: ...", "alpha out of range: ..." or "disjointness: ...".
std::vector<std::string> validate_report(const ScenarioConfig& config);

std::uint64_t fnv1a(std::string_view data);

}  // namespace ffr
