#include "ffr/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "ffr/error.hpp"

namespace ffr {

namespace {

double edge_fraction(const TrafficSpec& spec, const ClusterLayout& layout) {
  if (spec.forced_zone) return *spec.forced_zone == Zone::Edge ? 1.0 : 0.0;
  return 1.0 - layout.center_area_fraction();
}

bool generates(const TrafficSpec& spec, CellIndex cell) {
  return std::find(spec.cells.begin(), spec.cells.end(), cell) != spec.cells.end();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void LoadSet::validate() const {
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::InvalidParameter, "load weights must be positive");
  }
  if (!(rt_fraction >= 0.0 && rt_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "rt_fraction must lie in [0, 1]");
  }
  if (!(mean_dwell > 0.0)) throw Error(ErrorCode::InvalidParameter, "mean dwell must be positive");
  if (!(load_scale >= 0.0)) throw Error(ErrorCode::InvalidParameter, "load scale must be >= 0");
}

LoadSet load_set(const std::string& name) {
  if (name == "set1") return load_set(LoadWeights{15.5, 15, 14, 13, 11, 10, 21.5});
  if (name == "set2") return load_set(LoadWeights{16, 15, 13, 12, 9, 7, 28});
  throw Error(ErrorCode::InvalidParameter, "unknown load set: " + name);
}

LoadSet load_set(const LoadWeights& weights) {
  LoadSet s;
  s.weights = weights;
  s.validate();
  return s;
}

double target_load(CellIndex cell, const LoadSet& loads) {
  if (cell < 1 || cell > kClusterCells) {
    throw Error(ErrorCode::InvalidParameter, "not a cluster cell: " + std::to_string(cell));
  }
  return loads.load_scale * loads.weights[static_cast<std::size_t>(cell - 1)] /
         loads.weights[kReferenceCell - 1];
}

double edge_arrival_rate(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan) {
  if (!generates(spec, cell)) return 0.0;
  if (spec.forced_zone == Zone::Center) return 0.0;
  const double channels = static_cast<double>(plan.channels_per_edge_band());
  return target_load(cell, spec.loads) * channels /
         (spec.loads.mean_dwell * spec.channels_per_call);
}

double arrival_rate(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan,
                    const ClusterLayout& layout) {
  if (!generates(spec, cell)) return 0.0;
  if (spec.forced_zone == Zone::Center) {
    // Load is defined on edge demand only; mirror it for an all-center population.
    const double channels = static_cast<double>(plan.channels_per_edge_band());
    return target_load(cell, spec.loads) * channels /
           (spec.loads.mean_dwell * spec.channels_per_call);
  }
  return edge_arrival_rate(cell, spec, plan) / edge_fraction(spec, layout);
}

double offered_load(CellIndex cell, const TrafficSpec& spec, const FrequencyPlan& plan) {
  const double channels = static_cast<double>(plan.channels_per_edge_band());
  return edge_arrival_rate(cell, spec, plan) * spec.loads.mean_dwell * spec.channels_per_call /
         channels;
}

std::vector<ArrivalEvent> generate_arrivals(const TrafficSpec& spec, double horizon,
                                            const FrequencyPlan& plan, const ClusterLayout& layout,
                                            std::uint64_t rng_seed) {
  spec.loads.validate();
  if (spec.channels_per_call < 1) {
    throw Error(ErrorCode::InvalidParameter, "calls need at least one channel");
  }
  std::vector<ArrivalEvent> events;
  if (!(horizon > 0.0)) return events;

  std::array<double, kClusterCells> rates{};
  double total = 0.0;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    rates[static_cast<std::size_t>(c - 1)] = arrival_rate(c, spec, plan, layout);
    total += rates[static_cast<std::size_t>(c - 1)];
  }
  if (total <= 0.0) return events;

  std::mt19937_64 rng(rng_seed);
  std::exponential_distribution<double> gap(total);
  std::discrete_distribution<int> pick(rates.begin(), rates.end());
  std::bernoulli_distribution rt(spec.loads.rt_fraction);
  std::exponential_distribution<double> dwell(1.0 / spec.loads.mean_dwell);

  for (double t = gap(rng); t < horizon; t += gap(rng)) {
    ArrivalEvent e;
    e.time = t;
    e.cell = pick(rng) + 1;
    e.traffic_class = rt(rng) ? TrafficClass::RT : TrafficClass::NRT;
    e.position = random_point_in_cell(e.cell, layout, rng);
    e.zone = spec.forced_zone ? *spec.forced_zone : classify_zone(e.position, e.cell, layout);
    e.channels = spec.channels_per_call;
    e.dwell = dwell(rng);
    events.push_back(e);
  }
  return events;
}

void write_arrivals_csv(std::ostream& out, const std::vector<ArrivalEvent>& events) {
  out << "time,cell,class,zone,x,y,channels,dwell\n";
  for (const auto& e : events) {
    out << fmt(e.time) << ',' << e.cell << ',' << to_string(e.traffic_class) << ','
        << to_string(e.zone) << ',' << fmt(e.position.x) << ',' << fmt(e.position.y) << ','
        << e.channels << ',' << fmt(e.dwell) << '\n';
  }
}

std::vector<ArrivalEvent> read_arrivals_csv(std::istream& in) {
  std::vector<ArrivalEvent> events;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "time,cell,class,zone,x,y,channels,dwell") fail("unexpected header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) fail("expected 8 fields");
    try {
      ArrivalEvent e;
      e.time = std::stod(f[0]);
      e.cell = std::stoi(f[1]);
      if (f[2] == "RT") {
        e.traffic_class = TrafficClass::RT;
      } else if (f[2] == "nRT") {
        e.traffic_class = TrafficClass::NRT;
      } else {
        fail("bad class " + f[2]);
      }
      if (f[3] == "center") {
        e.zone = Zone::Center;
      } else if (f[3] == "edge") {
        e.zone = Zone::Edge;
      } else {
        fail("bad zone " + f[3]);
      }
      e.position = {std::stod(f[4]), std::stod(f[5])};
      e.channels = std::stoi(f[6]);
      e.dwell = std::stod(f[7]);
      if (!events.empty() && e.time < events.back().time) fail("times must not decrease");
      events.push_back(e);
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
  }
  return events;
}

}  // namespace ffr
