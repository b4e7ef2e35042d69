#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffr/admission.hpp"
#include "ffr/geometry.hpp"
#include "ffr/spectrum.hpp"

namespace ffr {

using LoadWeights = std::array<double, kClusterCells>;

/// Relative traffic intensities of cells 1..7.
struct LoadSet {
  LoadWeights weights{1, 1, 1, 1, 1, 1, 1};
  double rt_fraction = 0.5;
  double mean_dwell = 120.0;  // s
  /// Traffic load of the reference cell; other cells scale by weight.
  double load_scale = 1.0;

  void validate() const;
  friend bool operator==(const LoadSet&, const LoadSet&) = default;
};

/// "set1" or "set2". Throws InvalidParameter for other names.
LoadSet load_set(const std::string& name);
LoadSet load_set(const LoadWeights& weights);

/// How arrivals are turned into requests.
struct TrafficSpec {
  LoadSet loads = load_set("set1");
  int channels_per_call = 1;
  /// Puts every user in this zone instead of sampling it from the position.
  std::optional<Zone> forced_zone;
  /// Cells that generate traffic.
  std::vector<CellIndex> cells{1, 2, 3, 4, 5, 6, 7};

  friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

/// Target traffic load of a cell: load_scale * w_cell / w_7.
double target_load(CellIndex cell, const LoadSet& loads);

/// Edge-zone (non-Z) call arrival rate that realises the target load, 1/s.
double edge_arrival_rate(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan);
/// All arrivals of the cell, center users included, 1/s.
double arrival_rate(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan,
                    const ClusterLayout& layout);

/// Mean non-Z bandwidth demand over the cell's edge band.
double offered_load(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan);

struct ArrivalEvent {
  double time = 0.0;
  CellIndex cell = kReferenceCell;
  TrafficClass traffic_class = TrafficClass::RT;
  Zone zone = Zone::Edge;
  Point position;
  int channels = 1;
  double dwell = 0.0;

  friend bool operator==(const ArrivalEvent&, const ArrivalEvent&) = default;
};

/// Superposed per-cell Poisson streams over [0, horizon), sorted by time.
std::vector<ArrivalEvent> generate_arrivals(const TrafficSpec& spec, double horizon,
                                            const FrequencyPlan& plan, const ClusterLayout& layout,
                                            std::uint64_t rng_seed);

/// time,cell,class,zone,x,y,channels,dwell
void write_arrivals_csv(std::ostream& out, const std::vector<ArrivalEvent>& events);
/// Throws ParseError with the offending line number.
std::vector<ArrivalEvent> read_arrivals_csv(std::istream& in);

}  // namespace ffr
