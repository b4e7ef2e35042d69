#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffr/engine.hpp"

namespace ffr {

inline constexpr const char* kVersion = "0.1.0";
/// Bumped whenever a preset's CSV header changes.
inline constexpr int kCsvSchemaVersion = 1;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// %.6g
std::string format_value(double x);
/// RFC 4180: CRLF line ends, fields quoted only when needed.
void write_csv(std::ostream& out, const Table& table);

struct ExperimentPreset {
  std::string name;
  std::string description;
  ScenarioConfig base;
  /// Config key the sweep assigns, e.g. "layout.small_cells".
  std::string sweep;
  std::vector<double> values;
  std::vector<std::string> header;
  std::function<Table(const ExperimentPreset&, const ScenarioConfig&)> run;
};

const std::vector<ExperimentPreset>& presets();
/// Throws UnknownPreset.
const ExperimentPreset& find_preset(const std::string& name);

/// Base config with overrides and seed applied.
ScenarioConfig preset_config(const ExperimentPreset& preset, const std::vector<std::string>& overrides,
                             std::optional<std::uint64_t> seed);

struct PresetOutput {
  Table table;
  std::string csv_file;
  std::string manifest_file;
};

/// Runs the preset and writes <out_dir>/<name>.csv and <out_dir>/<name>.manifest.
PresetOutput run_preset(const std::string& name, const std::vector<std::string>& overrides,
                        std::optional<std::uint64_t> seed, const std::string& out_dir);

/// key=value lines describing a run.
void write_manifest(std::ostream& out, const std::string& preset, const ScenarioConfig& config,
                    const std::vector<std::string>& overrides, const std::vector<std::string>& files);

}  // namespace ffr
