#include "ffr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <queue>
#include <random>
#include <thread>

#include "ffr/error.hpp"

namespace ffr {

namespace {

double student_t975(int df) {
  static constexpr std::array<double, 30> table{
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) return 0.0;
  if (df <= 30) return table[static_cast<std::size_t>(df - 1)];
  return 1.96;
}

struct Observer {
  std::function<void(const ArrivalEvent&, const AdmissionDecision&, const AdmissionControl&)>
      on_arrival;
  std::vector<double> sample_times;
  std::function<void(const AdmissionControl&)> on_sample;
};

void simulate(const ScenarioConfig& config, std::uint64_t seed, double horizon,
              const Observer& observer) {
  const FrequencyPlan plan = config.make_plan();
  const ClusterLayout layout = config.make_layout();
  const auto events =
      generate_arrivals(config.traffic, horizon, plan, layout, derive_seed(seed, 1));
  AdmissionControl control(plan, config.scheme);

  using Departure = std::pair<double, CallId>;
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures;
  auto advance = [&](double t) {
    while (!departures.empty() && departures.top().first <= t) {
      control.release(departures.top().second);
      departures.pop();
    }
  };
  std::size_t next_sample = 0;
  auto sample_until = [&](double t) {
    while (next_sample < observer.sample_times.size() && observer.sample_times[next_sample] <= t) {
      advance(observer.sample_times[next_sample]);
      observer.on_sample(control);
      ++next_sample;
    }
  };

  for (const auto& e : events) {
    sample_until(e.time);
    advance(e.time);
    const CallRequest request{e.traffic_class, e.cell, e.zone, e.channels, e.time, e.dwell};
    const AdmissionDecision d = control.admit(request);
    if (d.accepted) departures.emplace(e.time + e.dwell, d.id);
    if (observer.on_arrival) observer.on_arrival(e, d, control);
  }
  sample_until(horizon);
}

void fill_class(ClassBlocking& out, const std::vector<std::int64_t>& offered,
                const std::vector<std::int64_t>& blocked) {
  std::vector<double> ratios;
  for (std::size_t b = 0; b < offered.size(); ++b) {
    out.offered += offered[b];
    out.blocked += blocked[b];
    if (offered[b] > 0) {
      ratios.push_back(static_cast<double>(blocked[b]) / static_cast<double>(offered[b]));
    }
  }
  out.probability =
      out.offered > 0 ? static_cast<double>(out.blocked) / static_cast<double>(out.offered) : 0.0;
  if (ratios.size() < 2) return;
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(ratios.size() - 1);
  const int n = static_cast<int>(ratios.size());
  out.ci = student_t975(n - 1) * std::sqrt(var / n);
}

}  // namespace

void ScenarioConfig::validate() const {
  radio.validate();
  traffic.loads.validate();
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidParameter, what);
  };
  require(radio.channel_bandwidth > 0, "channel bandwidth must be positive");
  (void)make_plan();
  (void)make_layout();
  require(traffic.channels_per_call >= 1, "channels per call must be at least 1");
  require(!traffic.cells.empty(), "at least one cell must generate traffic");
  for (CellIndex c : traffic.cells) require(c >= 1 && c <= kClusterCells, "traffic cell out of range");
  require(layout.small_cells >= 0, "small cell count must be >= 0");
  require(layout.mue_center_distance > 0 && layout.mue_edge_distance > 0,
          "reference distances must be positive");
  require(layout.sbs_center_distance > 0 && layout.sbs_edge_distance > 0 && layout.sue_distance > 0,
          "small-cell distances must be positive");
  const double apothem = layout.inter_site_distance / 2.0;
  require(std::max({layout.mue_center_distance, layout.mue_edge_distance,
                    layout.sbs_center_distance + layout.sue_distance,
                    layout.sbs_edge_distance + layout.sue_distance}) < apothem,
          "reference users must lie inside the reference cell");
  require(engine.warmup_dwells >= 0, "warm-up must be >= 0");
  require(engine.window_dwells > 0, "measurement window must be positive");
  require(engine.batches >= 2, "need at least two batches");
  require(engine.snapshots >= 1, "need at least one snapshot");
  require(engine.snapshot_spacing_dwells > 0, "snapshot spacing must be positive");
  require(!engine.gammas_db.empty(), "need at least one SINR threshold");
  require(engine.threads >= 0, "threads must be >= 0");
}

FrequencyPlan ScenarioConfig::make_plan() const {
  return initial_plan(plan.total_bandwidth, plan.z_fraction, radio.channel_bandwidth,
                      plan.reserve_fraction);
}

ClusterLayout ScenarioConfig::make_layout() const {
  return build_cluster(layout.inter_site_distance, layout.center_radius);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

Estimate estimate(const std::vector<double>& samples) {
  Estimate e;
  e.n = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return e;
  for (double s : samples) e.mean += s;
  e.mean /= static_cast<double>(samples.size());
  if (samples.size() < 2) return e;
  double var = 0.0;
  for (double s : samples) var += (s - e.mean) * (s - e.mean);
  var /= static_cast<double>(samples.size() - 1);
  e.ci = 1.96 * std::sqrt(var / static_cast<double>(samples.size()));
  return e;
}

bool non_inferior(const Estimate& a, const Estimate& b) {
  const double se = std::hypot(a.standard_error(), b.standard_error());
  return a.mean - b.mean >= -1.96 * se;
}

bool significantly_greater(const Estimate& a, const Estimate& b) {
  const double se = std::hypot(a.standard_error(), b.standard_error());
  return a.mean - b.mean > 1.96 * se;
}

BlockingMetrics run_dynamic(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  const double dwell = config.traffic.loads.mean_dwell;
  const double start = config.engine.warmup_dwells * dwell;
  const double window = config.engine.window_dwells * dwell;
  const int batches = config.engine.batches;

  BlockingMetrics m;
  m.scheme = config.scheme;
  m.offered_load = offered_load(kReferenceCell, config.traffic, config.make_plan());

  std::array<std::vector<std::int64_t>, 2> offered, blocked;
  for (auto* v : {&offered[0], &offered[1], &blocked[0], &blocked[1]}) v->assign(batches, 0);
  std::int64_t accepted = 0, borrowing = 0, arrivals = 0;
  double borrowed_hz = 0.0;

  Observer obs;
  obs.on_arrival = [&](const ArrivalEvent& e, const AdmissionDecision& d,
                       const AdmissionControl& control) {
    if (e.time < start || e.cell != kReferenceCell) return;
    const auto b = std::min<std::size_t>(
        static_cast<std::size_t>((e.time - start) / window * batches), batches - 1);
    const auto c = static_cast<std::size_t>(e.traffic_class);
    ++offered[c][b];
    if (!d.accepted) ++blocked[c][b];
    if (d.accepted) {
      ++accepted;
      if (d.reassignment_triggered) ++borrowing;
    }
    ++arrivals;
    borrowed_hz += static_cast<double>(control.reassignment().x().measure());
  };
  simulate(config, seed, start + window, obs);

  fill_class(m.rt, offered[0], blocked[0]);
  fill_class(m.nrt, offered[1], blocked[1]);
  std::vector<std::int64_t> all_offered(batches), all_blocked(batches);
  for (int b = 0; b < batches; ++b) {
    all_offered[b] = offered[0][b] + offered[1][b];
    all_blocked[b] = blocked[0][b] + blocked[1][b];
  }
  fill_class(m.all, all_offered, all_blocked);
  m.reassignment_rate = accepted > 0 ? static_cast<double>(borrowing) / accepted : 0.0;
  m.mean_borrowed_hz = arrivals > 0 ? borrowed_hz / static_cast<double>(arrivals) : 0.0;
  return m;
}

std::vector<AdmissionControl> sample_snapshots(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  const double dwell = config.traffic.loads.mean_dwell;
  const double start = config.engine.warmup_dwells * dwell;
  const double spacing = config.engine.snapshot_spacing_dwells * dwell;
  Observer obs;
  for (int k = 0; k < config.engine.snapshots; ++k) obs.sample_times.push_back(start + k * spacing);
  std::vector<AdmissionControl> out;
  out.reserve(obs.sample_times.size());
  obs.on_sample = [&](const AdmissionControl& control) { out.push_back(control); };
  simulate(config, seed, obs.sample_times.back(), obs);
  return out;
}

namespace {

struct UserSample {
  bool blocked = true;
  double sinr_db = 0.0;
  double capacity = 0.0;
  std::vector<double> outage;
};

struct DropSample {
  std::array<std::array<UserSample, 2>, 2> mue;
  std::array<UserSample, 2> sue;
  double ase = 0.0;
};

UserSample evaluate(const UserDescriptor& user, const BandSet& channel, const RadioEnvironment& env,
                    const ScenarioConfig& config) {
  UserSample s;
  s.blocked = false;
  const LinkBudget link = serving_link(user, channel, env, config.radio);
  const InterferenceProfile profile = build_interference_profile(user, channel, env, config.radio);
  const double x = sinr(link, profile);
  s.sinr_db = linear_to_db(x);
  s.capacity = rate(x);
  for (double g : config.engine.gammas_db) {
    s.outage.push_back(outage_analytic(link.rx_power_mw(), profile, db_to_linear(g)));
  }
  return s;
}

UserSample blocked_sample(const ScenarioConfig& config) {
  UserSample s;
  s.outage.assign(config.engine.gammas_db.size(), 1.0);
  return s;
}

DropSample drop_one(const ScenarioConfig& config, const AdmissionControl& snapshot,
                    const ClusterLayout& layout, std::uint64_t seed, int k) {
  std::mt19937_64 rng(derive_seed(seed, 2'000'000 + static_cast<std::uint64_t>(k)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;
  const double mue_bearing = two_pi * unit(rng);
  const std::array<double, 2> sbs_bearing{two_pi * unit(rng), two_pi * unit(rng)};
  const std::array<double, 2> sue_bearing{two_pi * unit(rng), two_pi * unit(rng)};
  const std::array<double, 2> pick{unit(rng), unit(rng)};

  const auto smalls = place_small_cells(kReferenceCell, config.layout.small_cells,
                                        derive_seed(seed, 1'000'000 + static_cast<std::uint64_t>(k)),
                                        layout);
  const ChannelGrid& grid = snapshot.plan().grid();
  DropSample out;

  for (Zone zone : {Zone::Center, Zone::Edge}) {
    const auto zi = static_cast<std::size_t>(zone);
    const double d = zone == Zone::Center ? config.layout.mue_center_distance
                                          : config.layout.mue_edge_distance;
    const Point pos = layout.point_at(kReferenceCell, d, mue_bearing);
    const Zone actual = classify_zone(pos, kReferenceCell, layout);
    for (TrafficClass cls : {TrafficClass::RT, TrafficClass::NRT}) {
      AdmissionControl control = snapshot;
      const AdmissionDecision dec = control.admit(
          {cls, kReferenceCell, actual, config.traffic.channels_per_call, 0.0, 0.0});
      auto& slot = out.mue[zi][static_cast<std::size_t>(cls)];
      if (!dec.accepted) {
        slot = blocked_sample(config);
        continue;
      }
      const Reassignment r = control.reassignment();
      const RadioEnvironment env = make_environment(control.plan(), &r, layout, smalls);
      const BandSet channel = grid.to_band({grid.channels_in(dec.slice).front()});
      slot = evaluate({pos, kReferenceCell, actual, -1}, channel, env, config);
    }
  }

  const Reassignment r = snapshot.reassignment();
  for (Zone zone : {Zone::Center, Zone::Edge}) {
    const auto zi = static_cast<std::size_t>(zone);
    const double d = zone == Zone::Center ? config.layout.sbs_center_distance
                                          : config.layout.sbs_edge_distance;
    const Point sbs = layout.point_at(kReferenceCell, d, sbs_bearing[zi]);
    const Point sue{sbs.x + config.layout.sue_distance * std::cos(sue_bearing[zi]),
                    sbs.y + config.layout.sue_distance * std::sin(sue_bearing[zi])};
    auto sites = smalls;
    sites.push_back({sbs, kReferenceCell, classify_zone(sbs, kReferenceCell, layout)});
    const RadioEnvironment env = make_environment(snapshot.plan(), &r, layout, std::move(sites));
    const int serving = static_cast<int>(env.small_cells.size()) - 1;
    const auto channels = grid.channels_in(env.small_bands[static_cast<std::size_t>(serving)]);
    if (channels.empty()) {
      out.sue[zi] = blocked_sample(config);
      continue;
    }
    const auto idx = std::min(channels.size() - 1,
                              static_cast<std::size_t>(pick[zi] * static_cast<double>(channels.size())));
    const UserDescriptor user{sue, kReferenceCell, classify_zone(sue, kReferenceCell, layout), serving};
    out.sue[zi] = evaluate(user, grid.to_band({channels[idx]}), env, config);
  }

  const CellState& state = snapshot.state(kReferenceCell);
  const Zone center = Zone::Center, edge = Zone::Edge;
  const double n_c = static_cast<double>(state.demand(&center, nullptr)) + 1.0;
  const double n_e = static_cast<double>(state.demand(&edge, nullptr)) + 1.0;
  const double f = config.traffic.loads.rt_fraction;
  auto mixed = [&](Zone z) {
    const auto& row = out.mue[static_cast<std::size_t>(z)];
    return f * row[0].capacity + (1.0 - f) * row[1].capacity;
  };
  out.ase = area_spectral_efficiency(n_c, n_e, mixed(Zone::Center), mixed(Zone::Edge), 1.0, 3.0);
  return out;
}

UserMetrics summarize(const std::vector<const UserSample*>& samples, std::size_t gammas) {
  std::vector<double> sinr_db, capacity, blocked;
  std::vector<std::vector<double>> outage(gammas);
  for (const UserSample* s : samples) {
    if (!s->blocked) sinr_db.push_back(s->sinr_db);
    capacity.push_back(s->capacity);
    blocked.push_back(s->blocked ? 1.0 : 0.0);
    for (std::size_t g = 0; g < gammas; ++g) outage[g].push_back(s->outage[g]);
  }
  UserMetrics m;
  m.sinr_db = estimate(sinr_db);
  m.capacity = estimate(capacity);
  m.blocked = estimate(blocked);
  for (const auto& o : outage) m.outage.push_back(estimate(o));
  return m;
}

}  // namespace

DropMetrics run_drop(const ScenarioConfig& config, const std::vector<AdmissionControl>& snapshots,
                     std::uint64_t seed) {
  config.validate();
  const ClusterLayout layout = config.make_layout();
  const int n = static_cast<int>(snapshots.size());
  std::vector<DropSample> samples(snapshots.size());
  parallel_for(n, config.engine.threads, [&](int k) {
    samples[static_cast<std::size_t>(k)] =
        drop_one(config, snapshots[static_cast<std::size_t>(k)], layout, seed, k);
  });

  DropMetrics m;
  m.scheme = config.scheme;
  m.gammas_db = config.engine.gammas_db;
  const std::size_t gammas = m.gammas_db.size();
  for (std::size_t z = 0; z < 2; ++z) {
    for (std::size_t c = 0; c < 2; ++c) {
      std::vector<const UserSample*> v;
      for (const auto& s : samples) v.push_back(&s.mue[z][c]);
      m.mue[z][c] = summarize(v, gammas);
    }
    std::vector<const UserSample*> v;
    for (const auto& s : samples) v.push_back(&s.sue[z]);
    m.sue[z] = summarize(v, gammas);
  }
  std::vector<double> ase;
  for (const auto& s : samples) ase.push_back(s.ase);
  m.ase = estimate(ase);
  return m;
}

DropMetrics run_drop(const ScenarioConfig& config, std::uint64_t seed) {
  return run_drop(config, sample_snapshots(config, seed), seed);
}

SchemeComparison compare_schemes(const ScenarioConfig& base) {
  SchemeComparison out;
  parallel_for(3, base.engine.threads, [&](int i) {
    ScenarioConfig cfg = base;
    cfg.scheme = out.schemes[static_cast<std::size_t>(i)];
    cfg.engine.threads = 1;
    out.blocking[static_cast<std::size_t>(i)] = run_dynamic(cfg, base.seed);
    out.drops[static_cast<std::size_t>(i)] = run_drop(cfg, base.seed);
  });
  return out;
}

}  // namespace ffr
