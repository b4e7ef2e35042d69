// ffrsim: command-line driver for the FFR two-tier simulator.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ffr/config.hpp"
#include "ffr/engine.hpp"
#include "ffr/error.hpp"
#include "ffr/presets.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

int exit_code(const ffr::Error& e) {
  switch (e.code()) {
    case ffr::ErrorCode::ParseError:
    case ffr::ErrorCode::ValidationError:
    case ffr::ErrorCode::UnknownPreset:
    case ffr::ErrorCode::InvalidParameter:
    case ffr::ErrorCode::AlignmentError:
      return kConfigError;
    default:
      return kRuntimeError;
  }
}

ffr::Table blocking_table(const ffr::BlockingMetrics& b) {
  ffr::Table t{{"scheme", "class", "offered", "blocked", "blocking", "ci"}, {}};
  for (auto [label, c] : {std::pair{"RT", &b.rt}, {"nRT", &b.nrt}, {"all", &b.all}}) {
    t.rows.push_back({ffr::to_string(b.scheme), label, std::to_string(c->offered),
                      std::to_string(c->blocked), ffr::format_value(c->probability),
                      ffr::format_value(c->ci)});
  }
  return t;
}

ffr::Table user_table(const ffr::DropMetrics& d) {
  ffr::Table t{{"scheme", "user", "zone", "class", "gamma_db", "sinr_db", "capacity", "outage", "ci"}, {}};
  auto add = [&](const char* user, ffr::Zone z, const char* cls, const ffr::UserMetrics& u) {
    for (std::size_t g = 0; g < d.gammas_db.size(); ++g) {
      t.rows.push_back({ffr::to_string(d.scheme), user, ffr::to_string(z), cls,
                        ffr::format_value(d.gammas_db[g]), ffr::format_value(u.sinr_db.mean),
                        ffr::format_value(u.capacity.mean), ffr::format_value(u.outage[g].mean),
                        ffr::format_value(u.outage[g].ci)});
    }
  };
  for (ffr::Zone z : {ffr::Zone::Center, ffr::Zone::Edge}) {
    for (ffr::TrafficClass c : {ffr::TrafficClass::RT, ffr::TrafficClass::NRT}) {
      add("mue", z, ffr::to_string(c), d.mue_at(z, c));
    }
    add("sue", z, "all", d.sue_at(z));
  }
  return t;
}

void write_table(const std::filesystem::path& path, const ffr::Table& t) {
  std::ofstream out(path, std::ios::binary);
  ffr::write_csv(out, t);
  if (!out) throw ffr::Error(ffr::ErrorCode::InternalInconsistency, "cannot write " + path.string());
}

int simulate(const std::string& path, const std::vector<std::string>& overrides,
             std::optional<std::uint64_t> seed, const std::string& out_dir) {
  ffr::ScenarioConfig config = ffr::load_config(path);
  for (const auto& o : overrides) ffr::apply_override(config, o);
  if (seed) config.seed = *seed;
  config.validate();

  const auto blocking = ffr::run_dynamic(config, config.seed);
  const auto drop = ffr::run_drop(config, config.seed);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_table(dir / "blocking.csv", blocking_table(blocking));
  write_table(dir / "users.csv", user_table(drop));
  ffr::Table ase{{"scheme", "ase", "ci"},
                 {{ffr::to_string(config.scheme), ffr::format_value(drop.ase.mean),
                   ffr::format_value(drop.ase.ci)}}};
  write_table(dir / "ase.csv", ase);
  std::ofstream manifest(dir / "simulate.manifest", std::ios::binary);
  ffr::write_manifest(manifest, "simulate", config, overrides, {"blocking.csv", "users.csv", "ase.csv"});
  std::cout << "wrote " << (dir / "blocking.csv").string() << ", users.csv, ase.csv\n";
  return 0;
}

int validate(const std::string& path) {
  std::vector<std::string> findings;
  try {
    findings = ffr::validate_report(ffr::load_config(path, false));
  } catch (const ffr::Error& e) {
    if (e.code() != ffr::ErrorCode::ValidationError) throw;
    findings = {e.what()};
  }
  for (const auto& f : findings) std::cout << f << "\n";
  return findings == std::vector<std::string>{"OK"} ? 0 : kConfigError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FFR two-tier network simulator with RT/nRT traffic classification"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--override", overrides, "section.key=value, repeatable");
  };

  std::string preset;
  auto* run = app.add_subcommand("run", "Run a figure preset");
  run->add_option("preset", preset, "Preset name (see 'list')")->required();
  common(run);

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "Run one scenario from a config file");
  sim->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  common(sim);

  auto* val = app.add_subcommand("validate", "Check a config file");
  val->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);

  auto* list = app.add_subcommand("list", "List presets");
  auto* defaults = app.add_subcommand("defaults", "Print the default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      const auto out = ffr::run_preset(preset, overrides, seed, out_dir);
      std::cout << "wrote " << out.csv_file << " (" << out.table.rows.size() << " rows)\n";
      return 0;
    }
    if (*sim) return simulate(config_path, overrides, seed, out_dir);
    if (*val) return validate(config_path);
    if (*list) {
      for (const auto& p : ffr::presets()) std::cout << p.name << "  " << p.description << "\n";
      return 0;
    }
    if (*defaults) {
      std::cout << ffr::emit_config(ffr::ScenarioConfig{});
      return 0;
    }
  } catch (const ffr::Error& e) {
    std::cerr << "ffrsim: " << ffr::to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "ffrsim: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
