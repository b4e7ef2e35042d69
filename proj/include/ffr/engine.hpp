#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ffr/admission.hpp"
#include "ffr/channel.hpp"
#include "ffr/geometry.hpp"
#include "ffr/spectrum.hpp"
#include "ffr/traffic.hpp"

namespace ffr {

struct PlanParams {
  Hz total_bandwidth = 21'600'000;
  double z_fraction = 0.5;
  double reserve_fraction = 0.05;

  friend bool operator==(const PlanParams&, const PlanParams&) = default;
};

struct LayoutParams {
  double inter_site_distance = 1000.0;
  double center_radius = 250.0;
  int small_cells = 100;
  double mue_center_distance = 240.0;
  double mue_edge_distance = 420.0;
  double sbs_center_distance = 200.0;
  double sbs_edge_distance = 400.0;
  double sue_distance = 8.0;

  friend bool operator==(const LayoutParams&, const LayoutParams&) = default;
};

struct EngineParams {
  double warmup_dwells = 10.0;
  double window_dwells = 200.0;
  int batches = 20;
  int snapshots = 400;
  /// Spacing of snapshots taken from the dynamic run, in mean dwell times.
  double snapshot_spacing_dwells = 0.25;
  std::vector<double> gammas_db{8.45};
  /// Worker threads for independent runs; 0 picks the hardware count.
  int threads = 1;

  friend bool operator==(const EngineParams&, const EngineParams&) = default;
};

struct ScenarioConfig {
  RadioParams radio;
  PlanParams plan;
  LayoutParams layout;
  TrafficSpec traffic;
  EngineParams engine;
  Scheme scheme = Scheme::ProposedClassified;
  std::uint64_t seed = 1;

  /// Throws InvalidParameter or AlignmentError.
  void validate() const;
  FrequencyPlan make_plan() const;
  ClusterLayout make_layout() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Independent stream for task `task` under master seed `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task);

/// Runs fn(0..n-1) on up to `threads` workers. Results must be written to
/// per-index slots so the outcome does not depend on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Mean with a 95% half-width.
struct Estimate {
  double mean = 0.0;
  double ci = 0.0;
  std::int64_t n = 0;

  double standard_error() const { return ci / 1.96; }
};

Estimate estimate(const std::vector<double>& samples);
/// a is not worse than b beyond sampling noise: a - b >= -1.96 SE.
bool non_inferior(const Estimate& a, const Estimate& b);
/// a - b > 1.96 SE.
bool significantly_greater(const Estimate& a, const Estimate& b);

struct ClassBlocking {
  std::int64_t offered = 0;
  std::int64_t blocked = 0;
  double probability = 0.0;
  /// Batch-means 95% half-width.
  double ci = 0.0;
};

struct BlockingMetrics {
  Scheme scheme = Scheme::ProposedClassified;
  double offered_load = 0.0;
  ClassBlocking rt;
  ClassBlocking nrt;
  ClassBlocking all;
  /// Share of accepted reference-cell calls that borrowed spectrum.
  double reassignment_rate = 0.0;
  /// Average borrowed bandwidth seen by arrivals, Hz.
  double mean_borrowed_hz = 0.0;
};

/// Event-driven run over the config's arrival stream; blocking is measured
/// in the reference cell after the warm-up.
BlockingMetrics run_dynamic(const ScenarioConfig& config, std::uint64_t seed);

/// Network states sampled from the dynamic run at steady state.
std::vector<AdmissionControl> sample_snapshots(const ScenarioConfig& config, std::uint64_t seed);

struct UserMetrics {
  /// Over served users only.
  Estimate sinr_db;
  /// Blocked users count as zero.
  Estimate capacity;
  Estimate blocked;
  /// One entry per threshold; blocked users count as in outage.
  std::vector<Estimate> outage;
};

struct DropMetrics {
  Scheme scheme = Scheme::ProposedClassified;
  std::vector<double> gammas_db;
  /// [zone][class] for the reference MUE.
  std::array<std::array<UserMetrics, 2>, 2> mue;
  /// [zone] for the reference sUE.
  std::array<UserMetrics, 2> sue;
  Estimate ase;

  const UserMetrics& mue_at(Zone z, TrafficClass c) const {
    return mue[static_cast<std::size_t>(z)][static_cast<std::size_t>(c)];
  }
  const UserMetrics& sue_at(Zone z) const { return sue[static_cast<std::size_t>(z)]; }
};

/// Evaluates reference users against frozen snapshots. Each snapshot gets a
/// fresh small-cell drop and user bearing; both depend only on `seed` and the
/// snapshot index, so schemes and sweeps see the same geometry.
DropMetrics run_drop(const ScenarioConfig& config, const std::vector<AdmissionControl>& snapshots,
                     std::uint64_t seed);
DropMetrics run_drop(const ScenarioConfig& config, std::uint64_t seed);

struct SchemeComparison {
  std::array<Scheme, 3> schemes{Scheme::ProposedClassified, Scheme::ProposedUnclassified,
                                Scheme::Conventional};
  std::array<DropMetrics, 3> drops;
  std::array<BlockingMetrics, 3> blocking;
};

/// Same seed, hence the same arrival trace and geometry, for every scheme.
SchemeComparison compare_schemes(const ScenarioConfig& base);

}  // namespace ffr
