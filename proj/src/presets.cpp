#include "ffr/presets.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "ffr/config.hpp"
#include "ffr/error.hpp"

namespace ffr {

namespace {

constexpr std::array<Scheme, 3> kSchemes{Scheme::ProposedClassified, Scheme::ProposedUnclassified,
                                         Scheme::Conventional};

struct ClassRow {
  const char* label;
  TrafficClass cls;
};

std::vector<ClassRow> class_rows(Scheme s) {
  if (s == Scheme::ProposedClassified) return {{"RT", TrafficClass::RT}, {"nRT", TrafficClass::NRT}};
  return {{"all", TrafficClass::RT}};
}

enum class Metric { Capacity, Outage, Sinr };

const Estimate& pick(const UserMetrics& u, Metric m) {
  switch (m) {
    case Metric::Capacity: return u.capacity;
    case Metric::Outage: return u.outage.front();
    case Metric::Sinr: break;
  }
  return u.sinr_db;
}

ScenarioConfig with_value(const ScenarioConfig& base, const std::string& key, double value, Scheme s) {
  ScenarioConfig c = base;
  apply_override(c, key + "=" + format_value(value));
  c.scheme = s;
  return c;
}

// Geometry sweeps reuse one set of snapshots per scheme.
Table drop_sweep(const ExperimentPreset& p, const ScenarioConfig& base,
                 const std::function<void(Table&, const std::string&, Scheme, const DropMetrics&)>& emit) {
  Table t{p.header, {}};
  for (Scheme s : kSchemes) {
    ScenarioConfig c = base;
    c.scheme = s;
    const auto snapshots = sample_snapshots(c, c.seed);
    for (double v : p.values) {
      const ScenarioConfig cv = with_value(c, p.sweep, v, s);
      emit(t, format_value(v), s, run_drop(cv, snapshots, cv.seed));
    }
  }
  return t;
}

std::function<Table(const ExperimentPreset&, const ScenarioConfig&)> mue_sweep(Zone z, Metric m) {
  return [=](const ExperimentPreset& p, const ScenarioConfig& base) {
    return drop_sweep(p, base, [=](Table& t, const std::string& v, Scheme s, const DropMetrics& d) {
      for (const auto& row : class_rows(s)) {
        const Estimate& e = pick(d.mue_at(z, row.cls), m);
        t.rows.push_back({v, to_string(s), row.label, format_value(e.mean), format_value(e.ci)});
      }
    });
  };
}

std::function<Table(const ExperimentPreset&, const ScenarioConfig&)> sue_sweep(Zone z, Metric m) {
  return [=](const ExperimentPreset& p, const ScenarioConfig& base) {
    return drop_sweep(p, base, [=](Table& t, const std::string& v, Scheme s, const DropMetrics& d) {
      const Estimate& e = pick(d.sue_at(z), m);
      t.rows.push_back({v, to_string(s), format_value(e.mean), format_value(e.ci)});
    });
  };
}

std::function<Table(const ExperimentPreset&, const ScenarioConfig&)> gamma_sweep(Zone z) {
  return [=](const ExperimentPreset& p, const ScenarioConfig& base) {
    Table t{p.header, {}};
    for (Scheme s : kSchemes) {
      ScenarioConfig c = base;
      c.scheme = s;
      c.engine.gammas_db = p.values;
      const DropMetrics d = run_drop(c, c.seed);
      for (std::size_t g = 0; g < p.values.size(); ++g) {
        for (const auto& row : class_rows(s)) {
          const Estimate& e = d.mue_at(z, row.cls).outage[g];
          t.rows.push_back({format_value(p.values[g]), to_string(s), row.label, format_value(e.mean),
                            format_value(e.ci)});
        }
      }
    }
    return t;
  };
}

Table blocking_sweep(const ExperimentPreset& p, const ScenarioConfig& base) {
  Table t{p.header, {}};
  for (Scheme s : kSchemes) {
    for (double v : p.values) {
      const BlockingMetrics b = run_dynamic(with_value(base, p.sweep, v, s), base.seed);
      for (auto [label, cb] : {std::pair{"RT", &b.rt}, {"nRT", &b.nrt}, {"all", &b.all}}) {
        t.rows.push_back({format_value(v), to_string(s), label, format_value(cb->probability),
                          format_value(cb->ci)});
      }
    }
  }
  return t;
}

std::function<Table(const ExperimentPreset&, const ScenarioConfig&)> sinr_vs_load(Zone z) {
  return [=](const ExperimentPreset& p, const ScenarioConfig& base) {
    Table t{p.header, {}};
    for (Scheme s : kSchemes) {
      for (double v : p.values) {
        const DropMetrics d = run_drop(with_value(base, p.sweep, v, s), base.seed);
        for (const auto& row : class_rows(s)) {
          t.rows.push_back({format_value(v), to_string(s), row.label,
                            format_value(d.mue_at(z, row.cls).sinr_db.mean)});
        }
      }
    }
    return t;
  };
}

std::vector<ExperimentPreset> build_presets() {
  ScenarioConfig base;
  base.engine.threads = 0;
  const std::vector<double> center_d{40, 80, 120, 160, 200, 240};
  const std::vector<double> edge_d{260, 300, 340, 380, 420, 460};
  const std::vector<double> gammas{0, 2, 4, 6, 8, 8.45, 10, 12};
  const std::vector<double> loads{0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
  const std::vector<double> smalls{20, 50, 100};
  const std::vector<std::string> by_distance_cap{"distance_m", "scheme", "class", "capacity", "ci"};
  const std::vector<std::string> by_distance_out{"distance_m", "scheme", "class", "outage", "ci"};
  const std::vector<std::string> by_gamma{"gamma_db", "scheme", "class", "outage", "ci"};
  const std::vector<std::string> by_load_sinr{"load", "scheme", "class", "sinr_db"};
  const std::vector<std::string> by_smalls_cap{"small_cells", "scheme", "capacity", "ci"};
  const std::vector<std::string> by_smalls_out{"small_cells", "scheme", "outage", "ci"};

  std::vector<ExperimentPreset> v;
  v.push_back({"fig13-center-capacity", "MUE capacity vs distance, center zone", base,
               "layout.mue_center_distance", center_d, by_distance_cap,
               mue_sweep(Zone::Center, Metric::Capacity)});
  v.push_back({"fig14-edge-capacity", "MUE capacity vs distance, edge zone", base,
               "layout.mue_edge_distance", edge_d, by_distance_cap, mue_sweep(Zone::Edge, Metric::Capacity)});
  v.push_back({"fig15-center-outage", "MUE outage vs distance, center zone", base,
               "layout.mue_center_distance", center_d, by_distance_out,
               mue_sweep(Zone::Center, Metric::Outage)});
  v.push_back({"fig16-edge-outage", "MUE outage vs distance, edge zone", base, "layout.mue_edge_distance",
               edge_d, by_distance_out, mue_sweep(Zone::Edge, Metric::Outage)});
  v.push_back({"fig17-center-outage-gamma", "MUE outage vs SINR threshold at 240 m", base,
               "engine.gammas_db", gammas, by_gamma, gamma_sweep(Zone::Center)});
  v.push_back({"fig18-edge-outage-gamma", "MUE outage vs SINR threshold at 420 m", base,
               "engine.gammas_db", gammas, by_gamma, gamma_sweep(Zone::Edge)});
  v.push_back({"fig19-blocking", "reference-cell call blocking vs load", base, "traffic.load_scale", loads,
               {"load", "scheme", "class", "blocking", "ci"}, blocking_sweep});
  v.push_back({"fig20-center-sinr", "MUE SINR vs load at 240 m", base, "traffic.load_scale", loads,
               by_load_sinr, sinr_vs_load(Zone::Center)});
  v.push_back({"fig21-edge-sinr", "MUE SINR vs load at 420 m", base, "traffic.load_scale", loads,
               by_load_sinr, sinr_vs_load(Zone::Edge)});
  v.push_back({"fig22-sue-center-capacity", "sUE capacity vs small-cell count, center zone", base,
               "layout.small_cells", smalls, by_smalls_cap, sue_sweep(Zone::Center, Metric::Capacity)});
  v.push_back({"fig23-sue-edge-capacity", "sUE capacity vs small-cell count, edge zone", base,
               "layout.small_cells", smalls, by_smalls_cap, sue_sweep(Zone::Edge, Metric::Capacity)});
  v.push_back({"fig24-sue-center-outage", "sUE outage vs small-cell count, center zone", base,
               "layout.small_cells", smalls, by_smalls_out, sue_sweep(Zone::Center, Metric::Outage)});
  v.push_back({"fig25-sue-edge-outage", "sUE outage vs small-cell count, edge zone", base,
               "layout.small_cells", smalls, by_smalls_out, sue_sweep(Zone::Edge, Metric::Outage)});
  return v;
}

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    write_field(out, row[i]);
  }
  out << "\r\n";
}

}  // namespace

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  write_row(out, table.header);
  for (const auto& row : table.rows) write_row(out, row);
}

const std::vector<ExperimentPreset>& presets() {
  static const std::vector<ExperimentPreset> all = build_presets();
  return all;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

ScenarioConfig preset_config(const ExperimentPreset& preset, const std::vector<std::string>& overrides,
                             std::optional<std::uint64_t> seed) {
  ScenarioConfig c = preset.base;
  for (const auto& o : overrides) apply_override(c, o);
  if (seed) c.seed = *seed;
  const auto findings = validate_report(c);
  if (findings != std::vector<std::string>{"OK"}) {
    std::string msg;
    for (const auto& f : findings) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::ValidationError, msg);
  }
  return c;
}

void write_manifest(std::ostream& out, const std::string& preset, const ScenarioConfig& config,
                    const std::vector<std::string>& overrides, const std::vector<std::string>& files) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(emit_config(config))));
  std::string joined_overrides, joined_files;
  for (const auto& o : overrides) joined_overrides += (joined_overrides.empty() ? "" : ";") + o;
  for (const auto& f : files) joined_files += (joined_files.empty() ? "" : ";") + f;
  out << "preset=" << preset << "\n"
      << "seed=" << config.seed << "\n"
      << "config_hash=" << hash << "\n"
      << "version=" << kVersion << "\n"
      << "csv_schema=" << kCsvSchemaVersion << "\n"
      << "overrides=" << joined_overrides << "\n"
      << "files=" << joined_files << "\n";
}

PresetOutput run_preset(const std::string& name, const std::vector<std::string>& overrides,
                        std::optional<std::uint64_t> seed, const std::string& out_dir) {
  const ExperimentPreset& p = find_preset(name);
  const ScenarioConfig config = preset_config(p, overrides, seed);
  PresetOutput out;
  out.table = p.run(p, config);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  out.csv_file = (dir / (name + ".csv")).string();
  out.manifest_file = (dir / (name + ".manifest")).string();
  {
    std::ofstream csv(out.csv_file, std::ios::binary);
    write_csv(csv, out.table);
    if (!csv) throw Error(ErrorCode::InternalInconsistency, "cannot write " + out.csv_file);
  }
  std::ofstream manifest(out.manifest_file, std::ios::binary);
  write_manifest(manifest, name, config, overrides, {name + ".csv"});
  if (!manifest) throw Error(ErrorCode::InternalInconsistency, "cannot write " + out.manifest_file);
  return out;
}

}  // namespace ffr
