#include "ffr/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>

#include "ffr/error.hpp"

namespace ffr {

namespace {

enum class Unit { None, Hz, MHz, dBm, dB, Metre, Second, dBmPerHz };

const char* unit_name(Unit u) {
  switch (u) {
    case Unit::MHz: return "MHz";
    case Unit::dBm: return "dBm";
    case Unit::dB: return "dB";
    case Unit::Metre: return "m";
    case Unit::Second: return "s";
    case Unit::dBmPerHz: return "dBm/Hz";
    default: return "";
  }
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty() || (out.size() == 1 && out[0].empty())) bad("empty list");
  return out;
}

// Number followed by an optional unit suffix; returns the scale factor.
double parse_scaled(const std::string& raw, Unit unit, double& factor) {
  const std::string v = trim(raw);
  double x = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  if (!v.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr == first) bad("not a number: '" + v + "'");
  if (!std::isfinite(x)) bad("not a finite number: '" + v + "'");
  const std::string suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  factor = 1.0;
  if (suffix.empty()) return x;
  if (unit == Unit::Hz) {
    if (suffix == "Hz") return x;
    if (suffix == "kHz") return factor = 1e3, x;
    if (suffix == "MHz") return factor = 1e6, x;
    if (suffix == "GHz") return factor = 1e9, x;
  } else if (unit != Unit::None && suffix == unit_name(unit)) {
    return x;
  }
  bad("unexpected unit '" + suffix + "' in '" + v + "'");
}

double parse_real(const std::string& v, Unit unit) {
  double factor = 1.0;
  return parse_scaled(v, unit, factor) * factor;
}

Hz parse_hz(const std::string& v) {
  double factor = 1.0;
  const double x = parse_scaled(v, Unit::Hz, factor) * factor;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-3) bad("bandwidth must be a whole number of Hz: '" + trim(v) + "'");
  return static_cast<Hz>(r);
}

template <class T>
T parse_integer(const std::string& raw) {
  const std::string v = trim(raw);
  T x{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    bad("not an integer: '" + v + "'");
  }
  return x;
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

template <class Seq, class F>
std::string join(const Seq& seq, F fmt) {
  std::string out;
  for (const auto& x : seq) {
    if (!out.empty()) out += ", ";
    out += fmt(x);
  }
  return out;
}

struct ParseState {
  std::optional<double> alpha;
  bool gammas_set = false;
  bool gamma_set = false;
};

struct Field {
  std::string section;
  std::string key;
  std::function<void(ScenarioConfig&, ParseState&, const std::string&)> set;
  /// Empty for write-only aliases.
  std::function<std::string(const ScenarioConfig&)> get;
};

template <class Ref>
Field real(const char* s, const char* k, Unit u, Ref ref) {
  return {s, k, [=](ScenarioConfig& c, ParseState&, const std::string& v) { ref(c) = parse_real(v, u); },
          [=](const ScenarioConfig& c) { return format_real(ref(c)); }};
}

template <class Ref>
Field hz(const char* s, const char* k, Ref ref) {
  return {s, k, [=](ScenarioConfig& c, ParseState&, const std::string& v) { ref(c) = parse_hz(v); },
          [=](const ScenarioConfig& c) { return std::to_string(ref(c)); }};
}

template <class Ref>
Field integer(const char* s, const char* k, Ref ref) {
  return {s, k,
          [=](ScenarioConfig& c, ParseState&, const std::string& v) {
            using T = std::remove_reference_t<decltype(ref(c))>;
            ref(c) = parse_integer<T>(v);
          },
          [=](const ScenarioConfig& c) { return std::to_string(ref(c)); }};
}

std::optional<Zone> parse_zone(const std::string& v) {
  if (v == "none") return std::nullopt;
  if (v == "center") return Zone::Center;
  if (v == "edge") return Zone::Edge;
  bad("forced_zone must be none, center or edge");
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real("radio", "carrier_mhz", Unit::MHz, [](auto& c) -> auto& { return c.radio.carrier_mhz; }));
    f.push_back(real("radio", "small_carrier_mhz", Unit::MHz,
                     [](auto& c) -> auto& { return c.radio.small_carrier_mhz; }));
    f.push_back(real("radio", "mbs_height_m", Unit::Metre, [](auto& c) -> auto& { return c.radio.mbs_height_m; }));
    f.push_back(real("radio", "ue_height_m", Unit::Metre, [](auto& c) -> auto& { return c.radio.ue_height_m; }));
    f.push_back(real("radio", "wall_loss_db", Unit::dB, [](auto& c) -> auto& { return c.radio.wall_loss_db; }));
    f.push_back(real("radio", "small_loss_coefficient", Unit::None,
                     [](auto& c) -> auto& { return c.radio.small_loss_coefficient; }));
    f.push_back(real("radio", "floor_loss_db", Unit::dB, [](auto& c) -> auto& { return c.radio.floor_loss_db; }));
    f.push_back(real("radio", "edge_power_dbm", Unit::dBm, [](auto& c) -> auto& { return c.radio.edge_power_dbm; }));
    f.push_back(real("radio", "center_power_dbm", Unit::dBm,
                     [](auto& c) -> auto& { return c.radio.center_power_dbm; }));
    f.push_back({"radio", "alpha",
                 [](ScenarioConfig&, ParseState& st, const std::string& v) {
                   st.alpha = parse_real(v, Unit::None);
                 },
                 {}});
    f.push_back(real("radio", "small_power_dbm", Unit::dBm, [](auto& c) -> auto& { return c.radio.small_power_dbm; }));
    f.push_back(real("radio", "noise_density_dbm_hz", Unit::dBmPerHz,
                     [](auto& c) -> auto& { return c.radio.noise_density_dbm_hz; }));
    f.push_back(hz("radio", "channel_bandwidth", [](auto& c) -> auto& { return c.radio.channel_bandwidth; }));
    f.push_back({"radio", "gamma_db",
                 [](ScenarioConfig& c, ParseState& st, const std::string& v) {
                   c.radio.gamma_db = parse_real(v, Unit::dB);
                   st.gamma_set = true;
                 },
                 [](const ScenarioConfig& c) { return format_real(c.radio.gamma_db); }});
    f.push_back(real("radio", "small_cell_range_m", Unit::Metre,
                     [](auto& c) -> auto& { return c.radio.small_cell_range_m; }));

    f.push_back(hz("plan", "total_bandwidth", [](auto& c) -> auto& { return c.plan.total_bandwidth; }));
    f.push_back(real("plan", "z_fraction", Unit::None, [](auto& c) -> auto& { return c.plan.z_fraction; }));
    f.push_back(real("plan", "reserve_fraction", Unit::None, [](auto& c) -> auto& { return c.plan.reserve_fraction; }));

    f.push_back(real("layout", "inter_site_distance", Unit::Metre,
                     [](auto& c) -> auto& { return c.layout.inter_site_distance; }));
    f.push_back(real("layout", "center_radius", Unit::Metre, [](auto& c) -> auto& { return c.layout.center_radius; }));
    f.push_back(integer("layout", "small_cells", [](auto& c) -> auto& { return c.layout.small_cells; }));
    f.push_back(real("layout", "mue_center_distance", Unit::Metre,
                     [](auto& c) -> auto& { return c.layout.mue_center_distance; }));
    f.push_back(real("layout", "mue_edge_distance", Unit::Metre,
                     [](auto& c) -> auto& { return c.layout.mue_edge_distance; }));
    f.push_back(real("layout", "sbs_center_distance", Unit::Metre,
                     [](auto& c) -> auto& { return c.layout.sbs_center_distance; }));
    f.push_back(real("layout", "sbs_edge_distance", Unit::Metre,
                     [](auto& c) -> auto& { return c.layout.sbs_edge_distance; }));
    f.push_back(real("layout", "sue_distance", Unit::Metre, [](auto& c) -> auto& { return c.layout.sue_distance; }));

    f.push_back({"traffic", "load_set",
                 [](ScenarioConfig& c, ParseState&, const std::string& v) {
                   try {
                     c.traffic.loads.weights = load_set(trim(v)).weights;
                   } catch (const Error& e) {
                     bad(e.what());
                   }
                 },
                 {}});
    f.push_back({"traffic", "weights",
                 [](ScenarioConfig& c, ParseState&, const std::string& v) {
                   const auto items = split_list(v);
                   if (items.size() != c.traffic.loads.weights.size()) bad("weights needs 7 entries");
                   for (std::size_t i = 0; i < items.size(); ++i) {
                     c.traffic.loads.weights[i] = parse_real(items[i], Unit::None);
                   }
                 },
                 [](const ScenarioConfig& c) { return join(c.traffic.loads.weights, format_real); }});
    f.push_back(real("traffic", "rt_fraction", Unit::None,
                     [](auto& c) -> auto& { return c.traffic.loads.rt_fraction; }));
    f.push_back(real("traffic", "mean_dwell", Unit::Second,
                     [](auto& c) -> auto& { return c.traffic.loads.mean_dwell; }));
    f.push_back(real("traffic", "load_scale", Unit::None,
                     [](auto& c) -> auto& { return c.traffic.loads.load_scale; }));
    f.push_back(integer("traffic", "channels_per_call",
                        [](auto& c) -> auto& { return c.traffic.channels_per_call; }));
    f.push_back({"traffic", "forced_zone",
                 [](ScenarioConfig& c, ParseState&, const std::string& v) {
                   c.traffic.forced_zone = parse_zone(trim(v));
                 },
                 [](const ScenarioConfig& c) {
                   return std::string(c.traffic.forced_zone ? to_string(*c.traffic.forced_zone)
                                                            : "none");
                 }});
    f.push_back({"traffic", "cells",
                 [](ScenarioConfig& c, ParseState&, const std::string& v) {
                   c.traffic.cells.clear();
                   for (const auto& item : split_list(v)) {
                     c.traffic.cells.push_back(parse_integer<CellIndex>(item));
                   }
                 },
                 [](const ScenarioConfig& c) {
                   return join(c.traffic.cells, [](CellIndex i) { return std::to_string(i); });
                 }});

    f.push_back(real("engine", "warmup_dwells", Unit::None,
                     [](auto& c) -> auto& { return c.engine.warmup_dwells; }));
    f.push_back(real("engine", "window_dwells", Unit::None,
                     [](auto& c) -> auto& { return c.engine.window_dwells; }));
    f.push_back(integer("engine", "batches", [](auto& c) -> auto& { return c.engine.batches; }));
    f.push_back(integer("engine", "snapshots", [](auto& c) -> auto& { return c.engine.snapshots; }));
    f.push_back(real("engine", "snapshot_spacing_dwells", Unit::None,
                     [](auto& c) -> auto& { return c.engine.snapshot_spacing_dwells; }));
    f.push_back({"engine", "gammas_db",
                 [](ScenarioConfig& c, ParseState& st, const std::string& v) {
                   c.engine.gammas_db.clear();
                   for (const auto& item : split_list(v)) {
                     c.engine.gammas_db.push_back(parse_real(item, Unit::dB));
                   }
                   st.gammas_set = true;
                 },
                 [](const ScenarioConfig& c) { return join(c.engine.gammas_db, format_real); }});
    f.push_back(integer("engine", "threads", [](auto& c) -> auto& { return c.engine.threads; }));

    f.push_back({"run", "scheme",
                 [](ScenarioConfig& c, ParseState&, const std::string& v) {
                   try {
                     c.scheme = scheme_from_string(trim(v));
                   } catch (const Error& e) {
                     bad(e.what());
                   }
                 },
                 [](const ScenarioConfig& c) { return std::string(to_string(c.scheme)); }});
    f.push_back(integer("run", "seed", [](auto& c) -> auto& { return c.seed; }));
    return f;
  }();
  return table;
}

const Field& find_field(const std::string& section, const std::string& key) {
  for (const auto& f : fields()) {
    if (f.section == section && f.key == key) return f;
  }
  bad("unknown key '" + key + "' in section [" + section + "]");
}

void finish(ScenarioConfig& c, const ParseState& st) {
  if (st.alpha) {
    if (!(*st.alpha > 0.0 && *st.alpha < 1.0)) {
      throw Error(ErrorCode::ValidationError, "alpha out of range: must lie in (0, 1), got " +
                                                  format_real(*st.alpha));
    }
    c.radio.center_power_dbm = c.radio.edge_power_dbm + linear_to_db(*st.alpha);
  }
  if (st.gamma_set && !st.gammas_set) c.engine.gammas_db = {c.radio.gamma_db};
}

std::string join_findings(const std::vector<std::string>& findings) {
  std::string out;
  for (const auto& f : findings) out += (out.empty() ? "" : "; ") + f;
  return out;
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, bool validate) {
  ScenarioConfig config;
  ParseState state;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') bad("unterminated section header");
        section = trim(std::string_view(t).substr(1, t.size() - 2));
        if (section != "radio" && section != "plan" && section != "layout" && section != "traffic" &&
            section != "engine" && section != "run") {
          bad("unknown section [" + section + "]");
        }
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) bad("expected 'key = value'");
      if (section.empty()) bad("key outside of a section");
      const std::string key = trim(std::string_view(t).substr(0, eq));
      const std::string value = trim(std::string_view(t).substr(eq + 1));
      if (value.empty()) bad("missing value for '" + key + "'");
      find_field(section, key).set(config, state, value);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  finish(config, state);
  if (!validate) return config;
  const auto findings = validate_report(config);
  if (findings != std::vector<std::string>{"OK"}) {
    throw Error(ErrorCode::ValidationError, join_findings(findings));
  }
  return config;
}

ScenarioConfig load_config(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open config file '" + path + "'");
  return parse_config(in, validate);
}

std::string emit_config(const ScenarioConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (!f.get) continue;
    if (f.section != section) {
      if (!section.empty()) out += "\n";
      section = f.section;
      out += "[" + section + "]\n";
    }
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

void apply_override(ScenarioConfig& config, const std::string& assignment) {
  try {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
      bad("expected section.key=value");
    }
    const std::string section = trim(std::string_view(assignment).substr(0, dot));
    const std::string key = trim(std::string_view(assignment).substr(dot + 1, eq - dot - 1));
    const std::string value = trim(std::string_view(assignment).substr(eq + 1));
    if (value.empty()) bad("missing value");
    ParseState state;
    find_field(section, key).set(config, state, value);
    finish(config, state);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, "override '" + assignment + "': " + e.what());
  }
}

std::vector<std::string> validate_report(const ScenarioConfig& config) {
  std::vector<std::string> findings;
  const double a = config.radio.alpha();
  if (!(a > 0.0 && a < 1.0)) {
    findings.push_back("alpha out of range: center power " + format_real(config.radio.center_power_dbm) +
                       " dBm must be below edge power " + format_real(config.radio.edge_power_dbm) +
                       " dBm");
  }
  try {
    const FrequencyPlan plan = config.make_plan();
    const auto report = verify_disjointness(plan);
    for (const auto& v : report.violations) {
      findings.push_back("disjointness: " + v.rule + " between cells " + std::to_string(v.first) +
                         " and " + std::to_string(v.second));
    }
  } catch (const Error& e) {
    findings.push_back(std::string(e.code() == ErrorCode::AlignmentError ? "alignment: " : "invalid: ") +
                       e.what());
  }
  if (findings.empty()) {
    try {
      config.validate();
    } catch (const Error& e) {
      findings.push_back(std::string("invalid: ") + e.what());
    }
  }
  if (findings.empty()) findings.push_back("OK");
  return findings;
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ffr
