// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <bitset>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ffr/admission.hpp"
#include "ffr/band.hpp"
#include "ffr/channel.hpp"
#include "ffr/engine.hpp"
#include "ffr/error.hpp"
#include "ffr/presets.hpp"
#include "ffr/spectrum.hpp"

using namespace ffr;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("violated: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 ------------------------------------------------------------------------

constexpr Hz kRes = 10'000;
constexpr int kBins = 500;
using Bitmap = std::bitset<kBins>;

Bitmap rasterize(const BandSet& s) {
  Bitmap b;
  for (const auto& iv : s.intervals()) {
    for (Hz f = iv.lo; f < iv.hi; f += kRes) b.set(static_cast<std::size_t>(f / kRes));
  }
  return b;
}

BandSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 8);
  std::uniform_int_distribution<int> edge(0, kBins);
  std::vector<BandInterval> ivs;
  for (int n = count(rng); n > 0; --n) {
    int a = edge(rng), b = edge(rng);
    if (a > b) std::swap(a, b);
    ivs.push_back({a * kRes, b * kRes});
  }
  return BandSet::from_intervals(ivs);
}

Outcome band_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1000);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const BandSet a = random_set(rng), b = random_set(rng);
    const Bitmap ba = rasterize(a), bb = rasterize(b);
    const bool ok = rasterize(a | b) == (ba | bb) && rasterize(a & b) == (ba & bb) &&
                    rasterize(a - b) == (ba & ~bb) &&
                    a.measure() == static_cast<Hz>(ba.count()) * kRes &&
                    a.intersects(b) == (ba & bb).any() && a.is_subset_of(b) == (ba & ~bb).none();
    if (!ok) ++mismatches;
  }
  const double t = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " of 1000 cases disagree with the bitmap");
  o.require(t < 10.0, fmt("runtime %.2f s exceeds 10 s", t));
  o.note("1000 cases");
  return o;
}

// 2 ------------------------------------------------------------------------

constexpr Hz kMHz = 1'000'000;

void occupy(FrequencyPlan& plan, CellIndex cell, double fraction) {
  const BandInterval band = plan.edge_band(cell);
  const Hz width = std::llround(fraction * static_cast<double>(band.width()));
  plan.cell_spectrum(cell).in_use = BandSet(BandInterval{band.lo, band.lo + width});
}

std::vector<CellIndex> affected(const Reassignment& r) {
  std::vector<CellIndex> out;
  for (const auto& [cell, slice] : r.affected_cells) out.push_back(cell);
  return out;
}

Outcome case_studies() {
  Outcome o;
  auto plan = initial_plan(20 * kMHz, 0.4, 100'000, 0.0);
  // A: cell 6 lightest, then 4, then 2; B: cell 5 lightest, then 3, then 1.
  occupy(plan, 2, 0.8);
  occupy(plan, 4, 0.6);
  occupy(plan, 6, 0.3);
  occupy(plan, 1, 0.7);
  occupy(plan, 3, 0.5);
  occupy(plan, 5, 0.2);

  BandSet free_everywhere;
  for (auto cells : {std::array{2, 4, 6}, std::array{1, 3, 5}}) {
    const BandLabel l = plan.cell_spectrum(cells[0]).label;
    BandSet quiet(plan.band(l));
    for (CellIndex c : cells) quiet -= plan.occupied(c);
    free_everywhere |= quiet;
  }
  const auto small = plan_reassignment(7, free_everywhere.measure(), plan);
  o.require(small.x().is_subset_of(free_everywhere), "universally free borrowing left the free slice");
  o.require(affected(small).empty(), "borrowing the free slice affected some cell");

  const Hz full = releasable(6, plan).measure() + releasable(5, plan).measure();
  const auto big = plan_reassignment(7, full, plan);
  o.require(affected(big) == std::vector<CellIndex>{1, 2, 3, 4},
            "maximal borrowing should affect exactly cells 1, 2, 3 and 4");
  o.require(big.lender_cells.count(5) == 1 && big.lender_cells.count(6) == 1,
            "lenders should be cells 5 and 6");

  auto single = initial_plan(20 * kMHz, 0.4, 100'000, 0.0);
  occupy(single, 2, 0.9);
  occupy(single, 4, 0.7);
  occupy(single, 6, 0.4);
  for (CellIndex c : {1, 3, 5}) occupy(single, c, 1.0);
  const auto one = plan_reassignment(7, 1 * kMHz, single);
  o.require(affected(one) == std::vector<CellIndex>{2}, "single-band borrowing should affect cell 2 only");
  o.note("free slice: none affected; maximal: {1,2,3,4}; one band: {2}");
  return o;
}

// 3 ------------------------------------------------------------------------

bool conserved(const AdmissionControl& ac, const std::vector<CallId>& live) {
  const FrequencyPlan& plan = ac.plan();
  const Reassignment r = ac.reassignment();
  if (r.x().measure() != r.x_a.measure() + r.x_b.measure()) return false;
  if (!r.x_a.is_subset_of(plan.band(BandLabel::A)) || !r.x_b.is_subset_of(plan.band(BandLabel::B))) {
    return false;
  }
  if (!r.x_i.is_subset_of(r.x())) return false;
  for (CellIndex c = 1; c <= 6; ++c) {
    const BandLabel l = plan.cell_spectrum(c).label;
    const BandSet band(plan.band(l));
    const BandSet occ = plan.occupied(c), res = plan.reserved(c), rel = releasable(c, plan);
    const BandSet lent = plan.lent_from(l);
    if (res.intersects(occ | lent) || rel.intersects(occ | res | lent)) return false;
    if ((occ | lent).measure() + res.measure() + rel.measure() != band.measure()) return false;
    if ((occ | res | rel | lent) != band) return false;
    if (plan.cell_spectrum(c).lent.intersects(occ | res)) return false;
  }
  const auto sets = transmit_sets(plan, &r);
  if (sets.macro_of(7).center.measure() + sets.macro_of(7).edge.measure() !=
      plan.z_band().width() + plan.band(BandLabel::C).width() + r.x().measure()) {
    return false;
  }
  Hz total = 0, calls = 0;
  for (CellIndex c = 1; c <= 7; ++c) total += plan.cell_spectrum(c).in_use.measure();
  for (CallId id : live) calls += ac.find(id)->slice.measure();
  if (total != calls) return false;
  return verify_disjointness(plan, &r).ok;
}

Outcome random_sequences() {
  Outcome o;
  std::mt19937_64 rng(3);
  constexpr std::array<Scheme, 3> schemes{Scheme::ProposedClassified, Scheme::ProposedUnclassified,
                                          Scheme::Conventional};
  int broken = 0;
  long events = 0, borrowed = 0;
  for (int seq = 0; seq < 10'000; ++seq) {
    const Scheme scheme = schemes[static_cast<std::size_t>(seq % 3)];
    const Hz total = static_cast<Hz>(6 * (2 + rng() % 4)) * 180'000;
    AdmissionControl ac(initial_plan(total, 0.5), scheme);
    std::vector<CallId> live;
    bool ok = true;
    for (int step = 0; step < 40 && ok; ++step) {
      if (!live.empty() && rng() % 5 < 2) {
        const auto k = rng() % live.size();
        ac.release(live[k]);
        live.erase(live.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        const CellIndex cell = rng() % 3 == 0 ? 7 : static_cast<CellIndex>(1 + rng() % 7);
        const Zone zone = rng() % 3 == 0 ? Zone::Center : Zone::Edge;
        const TrafficClass cls = rng() % 2 == 0 ? TrafficClass::RT : TrafficClass::NRT;
        const auto d = ac.admit({cls, cell, zone, 1, 0.0, 1.0});
        if (d.accepted) live.push_back(d.id);
        if (d.reassignment_triggered) ++borrowed;
      }
      ++events;
      try {
        ac.check_invariants();
      } catch (const Error&) {
        ok = false;
      }
      ok = ok && conserved(ac, live);
    }
    if (!ok) ++broken;
  }
  o.require(broken == 0, std::to_string(broken) + " sequences broke conservation or disjointness");
  o.note(std::to_string(events) + " events, " + std::to_string(borrowed) + " borrowing admissions");
  return o;
}

// 4 ------------------------------------------------------------------------

Outcome path_loss() {
  Outcome o;
  const RadioParams p;
  // Same model, natural-log arithmetic, written out from the parameter list.
  const double ln10 = std::log(10.0);
  auto lg = [&](double x) { return std::log(x) / ln10; };
  const double a_hm = 1.1 * (lg(1800) - 0.7) * 2.0 - (1.56 * lg(1800) - 0.8);
  const double hata = 69.55 + 26.16 * lg(1800) - 13.82 * lg(50) - a_hm + (44.9 - 6.55 * lg(50)) * lg(1.0) + 10;
  const double small = 20 * lg(1800) + 28 * lg(8) + 0 - 28;
  const double e1 = std::abs(macro_path_loss(1.0, p) - hata);
  const double e2 = std::abs(small_path_loss(8.0, p) - small);
  const double e3 = std::abs(macro_path_loss(1.0, p) - 139.88478887031258);
  const double e4 = std::abs(small_path_loss(8.0, p) - 62.391969737840526);
  o.require(std::max({e1, e2, e3, e4}) <= 1e-6, fmt("path loss off by %.3g / %.3g dB", std::max(e1, e3), std::max(e2, e4)));
  o.note(fmt("macro %.6f dB, small %.6f dB", macro_path_loss(1.0, p), small_path_loss(8.0, p)));
  return o;
}

// 5 ------------------------------------------------------------------------

Outcome outage_consistency() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-3.0, 1.0);
  std::uniform_int_distribution<int> count(0, 6);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    InterferenceProfile pr;
    pr.noise_mw = std::pow(10.0, u(rng));
    pr.second_tier_mw = std::pow(10.0, u(rng));
    for (int k = count(rng); k > 0; --k) pr.co_channel_macros.push_back({k, PowerClass::Edge, std::pow(10.0, u(rng))});
    for (int k = count(rng); k > 0; --k) pr.co_channel_smalls.push_back({k, 10.0, std::pow(10.0, u(rng) - 1.0)});
    const double gamma = std::pow(10.0, u(rng) + 1.0);
    const double s_o = 10.0 * std::pow(10.0, u(rng) + 1.0);
    const double exact = outage_analytic(s_o, pr, gamma);
    const auto mc = outage_monte_carlo(s_o, pr, gamma, 100'000, 500 + static_cast<std::uint64_t>(i));
    const double sigma = std::sqrt(exact * (1 - exact) / 1e5);
    const double z = sigma > 0 ? std::abs(mc.probability - exact) / sigma : 0.0;
    worst = std::max(worst, z);
    o.require(std::abs(mc.probability - exact) <= 3 * sigma + 1e-12,
              fmt("profile %g: MC %.5f vs analytic %.5f", i, mc.probability, exact));
  }
  const double t = seconds_since(t0);
  o.require(t < 60.0, fmt("runtime %.1f s exceeds 60 s", t));
  o.note(fmt("worst deviation %.2f sigma", worst));
  return o;
}

// 6 ------------------------------------------------------------------------

double erlang_b(double a, int n) {
  double b = 1.0;
  for (int k = 1; k <= n; ++k) b = a * b / (k + a * b);
  return b;
}

Outcome erlang() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [n, a] : {std::pair{2, 1.0}, {4, 2.0}, {8, 6.0}}) {
    ScenarioConfig c;
    c.plan.total_bandwidth = 6LL * n * c.radio.channel_bandwidth;
    c.traffic.cells = {7};
    c.traffic.forced_zone = Zone::Edge;
    c.traffic.loads.load_scale = a / n;
    c.scheme = Scheme::Conventional;
    c.engine.warmup_dwells = 20;
    c.engine.window_dwells = 20'000;
    c.engine.batches = 25;
    const auto m = run_dynamic(c, 66);
    const double expected = erlang_b(a, n);
    const double sigma = m.all.ci / 1.96;
    const bool ok = std::abs(m.all.probability - expected) <= 3 * sigma;
    o.require(ok, fmt("C=%g: simulated blocking %.4f vs Erlang-B %.4f", n, m.all.probability, expected));
    o.note(fmt("C=%g a=%g", n, a) + fmt(": %.4f vs %.4f", m.all.probability, expected));
  }
  const double t = seconds_since(t0);
  o.require(t < 120.0, fmt("runtime %.1f s exceeds 120 s", t));
  return o;
}

// 7 ------------------------------------------------------------------------

constexpr std::array<Scheme, 3> kSchemes{Scheme::ProposedClassified, Scheme::ProposedUnclassified,
                                         Scheme::Conventional};
const std::vector<double> kGammas{0, 2, 4, 6, 8, 8.45, 10, 12};

ScenarioConfig trend_config(const char* set, double load, Scheme s) {
  ScenarioConfig c;
  c.traffic.loads.weights = load_set(set).weights;
  c.traffic.loads.load_scale = load;
  c.engine.gammas_db = kGammas;
  c.engine.threads = 0;
  c.scheme = s;
  return c;
}

bool ge(const Estimate& a, const Estimate& b) { return non_inferior(a, b); }
bool le(const Estimate& a, const Estimate& b) { return non_inferior(b, a); }
bool lt(const Estimate& a, const Estimate& b) { return significantly_greater(b, a); }

Estimate difference(const Estimate& a, const Estimate& b) {
  return {a.mean - b.mean, std::hypot(a.ci, b.ci), std::min(a.n, b.n)};
}

struct Group {
  std::string name;
  std::function<void(Outcome&)> run;
};

void mue_groups(std::vector<Group>& groups) {
  static std::map<double, std::array<DropMetrics, 3>> drops;
  auto at = [](double load) -> const std::array<DropMetrics, 3>& {
    auto it = drops.find(load);
    if (it == drops.end()) {
      std::array<DropMetrics, 3> d;
      for (std::size_t i = 0; i < 3; ++i) d[i] = run_drop(trend_config("set1", load, kSchemes[i]), 1);
      it = drops.emplace(load, d).first;
    }
    return it->second;
  };
  const std::vector<double> loads{0.6, 1.0, 1.4};

  groups.push_back({"center 240 m: RT >= nRT >= conventional (SINR, capacity)", [=](Outcome& o) {
    for (double load : loads) {
      const auto& d = at(load);
      const auto& rt = d[0].mue_at(Zone::Center, TrafficClass::RT);
      const auto& nrt = d[0].mue_at(Zone::Center, TrafficClass::NRT);
      const auto& conv = d[2].mue_at(Zone::Center, TrafficClass::RT);
      const std::string tag = fmt(" at load %g", load);
      o.require(ge(rt.sinr_db, nrt.sinr_db), "RT SINR below nRT" + tag);
      o.require(ge(nrt.sinr_db, conv.sinr_db), "nRT SINR below conventional" + tag);
      o.require(ge(rt.capacity, nrt.capacity), "RT capacity below nRT" + tag);
      o.require(ge(nrt.capacity, conv.capacity), "nRT capacity below conventional" + tag);
      o.note(fmt("load %g: SINR RT %.2f", load, rt.sinr_db.mean) +
             fmt(" nRT %.2f conv %.2f dB", nrt.sinr_db.mean, conv.sinr_db.mean));
    }
  }});

  groups.push_back({"edge 420 m: proposed >= conventional", [=](Outcome& o) {
    for (double load : loads) {
      const auto& d = at(load);
      const auto& conv = d[2].mue_at(Zone::Edge, TrafficClass::RT);
      const std::array<const UserMetrics*, 3> prop{&d[0].mue_at(Zone::Edge, TrafficClass::RT),
                                                   &d[0].mue_at(Zone::Edge, TrafficClass::NRT),
                                                   &d[1].mue_at(Zone::Edge, TrafficClass::RT)};
      for (const auto* p : prop) {
        o.require(ge(p->sinr_db, conv.sinr_db), fmt("proposed edge SINR below conventional at load %g", load));
        o.require(ge(p->capacity, conv.capacity), fmt("proposed edge capacity below conventional at load %g", load));
      }
      o.note(fmt("load %g: capacity proposed %.3f conv %.3f", load, prop[0]->capacity.mean, conv.capacity.mean));
    }
  }});

  groups.push_back({"edge 420 m: RT-nRT gap grows with load", [=](Outcome& o) {
    auto gap = [&](double load) {
      const auto& d = at(load)[0];
      return difference(d.mue_at(Zone::Edge, TrafficClass::RT).sinr_db,
                        d.mue_at(Zone::Edge, TrafficClass::NRT).sinr_db);
    };
    const Estimate lo = gap(loads.front()), hi = gap(loads.back());
    o.require(significantly_greater(hi, lo), fmt("gap %.3f dB at load 1.4 vs %.3f dB at load 0.6", hi.mean, lo.mean));
    o.note(fmt("gap %.3f dB (load 0.6) -> %.3f dB (load 1.4)", lo.mean, hi.mean));
  }});

  groups.push_back({"outage vs threshold (center and edge)", [=](Outcome& o) {
    const auto& d = at(1.0);
    const std::size_t g845 = 5;
    const double rt_center = d[0].mue_at(Zone::Center, TrafficClass::RT).outage[g845].mean;
    o.require(rt_center <= 0.1, fmt("center RT outage %.3f at 8.45 dB is not near zero", rt_center));
    for (Zone z : {Zone::Center, Zone::Edge}) {
      for (std::size_t s = 0; s < 3; ++s) {
        for (TrafficClass c : {TrafficClass::RT, TrafficClass::NRT}) {
          const auto& out = d[s].mue_at(z, c).outage;
          for (std::size_t g = 1; g < out.size(); ++g) {
            o.require(out[g].mean >= out[g - 1].mean, "outage decreased with threshold");
          }
        }
      }
      for (std::size_t g = 0; g < kGammas.size(); ++g) {
        const auto& conv = d[2].mue_at(z, TrafficClass::RT).outage[g];
        const std::string tag = std::string(" (") + to_string(z) + fmt(", %g dB)", kGammas[g]);
        o.require(lt(d[0].mue_at(z, TrafficClass::RT).outage[g], conv), "RT outage not below conventional" + tag);
        o.require(le(d[0].mue_at(z, TrafficClass::NRT).outage[g], conv), "nRT outage above conventional" + tag);
        o.require(le(d[1].mue_at(z, TrafficClass::RT).outage[g], conv), "unclassified outage above conventional" + tag);
      }
    }
    o.note(fmt("center RT outage %.3f at 8.45 dB, %.3f at 12 dB", rt_center,
               d[0].mue_at(Zone::Center, TrafficClass::RT).outage.back().mean));
  }});
}

void blocking_group(std::vector<Group>& groups) {
  groups.push_back({"blocking: proposed < conventional, increasing in load", [](Outcome& o) {
    const std::vector<double> loads{0.6, 0.8, 1.0, 1.2, 1.4};
    for (const char* set : {"set1", "set2"}) {
      std::array<std::vector<Estimate>, 3> b;
      for (std::size_t s = 0; s < 3; ++s) {
        for (double load : loads) {
          const auto m = run_dynamic(trend_config(set, load, kSchemes[s]), 1);
          b[s].push_back({m.all.probability, m.all.ci, m.all.offered});
        }
      }
      for (std::size_t k = 0; k < loads.size(); ++k) {
        const std::string tag = std::string(" (") + set + fmt(", load %g)", loads[k]);
        o.require(lt(b[0][k], b[2][k]), "classified blocking not below conventional" + tag);
        o.require(lt(b[1][k], b[2][k]), "unclassified blocking not below conventional" + tag);
      }
      for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t k = 1; k < loads.size(); ++k) {
          o.require(ge(b[s][k], b[s][k - 1]), std::string("blocking fell with load under ") + to_string(kSchemes[s]));
        }
        o.require(significantly_greater(b[s].back(), b[s].front()),
                  std::string("blocking did not rise with load under ") + to_string(kSchemes[s]));
      }
      o.note(std::string(set) + fmt(": load 1.0 classified %.4f, conventional %.4f", b[0][2].mean, b[2][2].mean));
    }
  }});
}

void sue_group(std::vector<Group>& groups) {
  groups.push_back({"sUE: proposed vs conventional, monotone in small-cell count", [](Outcome& o) {
    const std::vector<int> counts{20, 50, 100};
    std::array<std::vector<DropMetrics>, 3> d;
    for (std::size_t s = 0; s < 3; ++s) {
      const auto base = trend_config("set1", 1.0, kSchemes[s]);
      const auto snaps = sample_snapshots(base, 1);
      for (int n : counts) {
        auto c = base;
        c.layout.small_cells = n;
        d[s].push_back(run_drop(c, snaps, 1));
      }
    }
    const std::size_t g = 5;
    for (Zone z : {Zone::Center, Zone::Edge}) {
      for (std::size_t k = 0; k < counts.size(); ++k) {
        const auto& conv = d[2][k].sue_at(z);
        for (std::size_t s = 0; s < 2; ++s) {
          const auto& p = d[s][k].sue_at(z);
          const std::string tag = std::string(" (") + to_string(kSchemes[s]) + ", " + to_string(z) +
                                  fmt(", N=%g)", counts[k]);
          o.require(ge(p.capacity, conv.capacity), "sUE capacity below conventional" + tag);
          o.require(le(p.outage[g], conv.outage[g]), "sUE outage above conventional" + tag);
        }
      }
      for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t k = 1; k < counts.size(); ++k) {
          o.require(d[s][k].sue_at(z).capacity.mean <= d[s][k - 1].sue_at(z).capacity.mean,
                    "sUE capacity rose with small-cell count");
          o.require(d[s][k].sue_at(z).outage[g].mean >= d[s][k - 1].sue_at(z).outage[g].mean,
                    "sUE outage fell with small-cell count");
        }
      }
    }
    o.note(fmt("center sUE capacity N=20..100: %.2f -> %.2f (classified)", d[0].front().sue_at(Zone::Center).capacity.mean,
               d[0].back().sue_at(Zone::Center).capacity.mean));
  }});
}

Outcome trends() {
  Outcome o;
  std::vector<Group> groups;
  mue_groups(groups);
  blocking_group(groups);
  sue_group(groups);
  for (const auto& g : groups) {
    Outcome part;
    const auto t0 = std::chrono::steady_clock::now();
    part.pass = true;
    g.run(part);
    const double t = seconds_since(t0);
    part.require(t <= 300.0, fmt("group took %.0f s, over 5 min", t));
    o.pass = o.pass && part.pass;
    o.note(std::string(part.pass ? "ok   " : "BAD  ") + g.name + fmt(" (%.1f s)", t));
    for (const auto& n : part.notes) o.note("       " + n);
  }
  return o;
}

// 8 ------------------------------------------------------------------------

Outcome ase() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 12.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double nc = std::floor(u(rng) * 5) + 1, ne = std::floor(u(rng) * 5);
    const double cc = u(rng), ce = u(rng);
    const double hand = (nc * cc / 1.0 + ne * ce / 3.0) / (nc + ne);
    const double got = area_spectral_efficiency(nc, ne, cc, ce, 1.0, 3.0);
    worst = std::max(worst, std::abs(got - hand) / std::max(std::abs(hand), 1e-300));
  }
  o.require(worst <= 1e-12, fmt("relative error %.3g", worst));
  o.note(fmt("worst relative error %.3g over 100 tuples", worst));
  return o;
}

// 9 ------------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  Outcome o;
  const auto root = std::filesystem::temp_directory_path() / "ffr-acceptance";
  std::filesystem::remove_all(root);
  for (const auto& p : presets()) {
    const auto a = run_preset(p.name, {}, 7, (root / "a").string());
    const auto b = run_preset(p.name, {}, 7, (root / "b").string());
    o.require(slurp(a.csv_file) == slurp(b.csv_file), p.name + " CSV differs between runs");
    o.require(slurp(a.manifest_file) == slurp(b.manifest_file), p.name + " manifest differs between runs");
  }
  std::filesystem::remove_all(root);
  o.note(std::to_string(presets().size()) + " presets rerun with seed 7");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"band algebra matches the bitmap oracle", band_oracle},
      {"reassignment case studies", case_studies},
      {"conservation over random admit/release sequences", random_sequences},
      {"path-loss regression", path_loss},
      {"analytic vs Monte-Carlo outage", outage_consistency},
      {"Erlang-B blocking", erlang},
      {"figure trends", trends},
      {"area spectral efficiency", ase},
      {"byte-identical preset reruns", determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::printf("criterion %d: %s  %s (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                seconds_since(t0));
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
