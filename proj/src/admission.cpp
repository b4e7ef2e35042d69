#include "ffr/admission.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "ffr/error.hpp"

namespace ffr {

namespace {

struct Pool {
  std::string name;
  std::vector<std::int64_t> channels;
};

std::vector<std::int64_t> ascending(const ChannelGrid& g, const BandSet& s) {
  return g.channels_in(s);
}

std::vector<std::int64_t> descending(const ChannelGrid& g, const BandSet& s) {
  auto v = g.channels_in(s);
  std::reverse(v.begin(), v.end());
  return v;
}

BandSet borrowed_from_label(const Reassignment& r, BandLabel label) {
  switch (label) {
    case BandLabel::A: return r.x_a;
    case BandLabel::B: return r.x_b;
    case BandLabel::C: return {};
  }
  return {};
}

}  // namespace

const char* to_string(TrafficClass c) { return c == TrafficClass::RT ? "RT" : "nRT"; }

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ProposedClassified: return "proposed-classified";
    case Scheme::ProposedUnclassified: return "proposed-unclassified";
    case Scheme::Conventional: return "conventional";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  for (Scheme v : {Scheme::ProposedClassified, Scheme::ProposedUnclassified, Scheme::Conventional}) {
    if (s == to_string(v)) return v;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown scheme: " + s);
}

int CellState::demand(const Zone* zone, const TrafficClass* cls) const {
  int n = 0;
  for (const auto& [id, call] : active) {
    if (zone != nullptr && call.zone != *zone) continue;
    if (cls != nullptr && call.traffic_class != *cls) continue;
    n += call.channels;
  }
  return n;
}

BandSet CellState::in_use() const {
  BandSet s;
  for (const auto& [id, call] : active) s |= call.slice;
  return s;
}

std::vector<BandGroup> band_preference_groups(const FrequencyPlan& plan, const Reassignment& r,
                                              Zone zone, TrafficClass cls, Scheme scheme) {
  const BandGroup c{"C", BandSet(plan.band(BandLabel::C))};
  const BandGroup z{"Z", BandSet(plan.z_band())};
  if (scheme == Scheme::Conventional) return {zone == Zone::Edge ? c : z};
  const BandGroup xc{"X-XI", r.x_clean()};
  const BandGroup xi{"XI", r.x_i};
  std::vector<BandGroup> out;
  if (zone == Zone::Edge) {
    out = {c, xc};
  } else if (scheme == Scheme::ProposedClassified && cls == TrafficClass::NRT) {
    out = {z, xi, c, xc};
  } else {
    out = {c, xc, z, xi};
  }
  std::erase_if(out, [](const BandGroup& g) { return g.band.empty(); });
  return out;
}

AdmissionControl::AdmissionControl(FrequencyPlan plan, Scheme scheme)
    : plan_(std::move(plan)), scheme_(scheme) {}

const CellState& AdmissionControl::state(CellIndex cell) const {
  if (cell < 1 || cell > kClusterCells) {
    throw Error(ErrorCode::InvalidParameter, "not a cluster cell: " + std::to_string(cell));
  }
  return cells_[static_cast<std::size_t>(cell - 1)];
}

const CallRecord* AdmissionControl::find(CallId id) const {
  for (const auto& cs : cells_) {
    auto it = cs.active.find(id);
    if (it != cs.active.end()) return &it->second;
  }
  return nullptr;
}

bool AdmissionControl::rebuild(CellIndex cell, const CellState& calls, Placement& out) const {
  const ChannelGrid& g = plan_.grid();
  const Reassignment r = current_reassignment(plan_);
  const bool reference = cell == kReferenceCell;
  const BandLabel label = plan_.cell_spectrum(cell).label;

  Pool own, clean, z, shared;
  if (reference) {
    // Peers fill Z from the bottom, so its top channels are the quietest.
    z = {"Z", descending(g, plan_.z_band())};
    own = {"C", ascending(g, plan_.band(BandLabel::C))};
    clean = {"X-XI", descending(g, r.x_clean())};
    shared = {"XI", descending(g, r.x_i)};
  } else {
    z = {"Z", ascending(g, plan_.z_band())};
    // Other cells keep off borrowed spectrum except what they still occupy.
    const BandSet x = borrowed_from_label(r, label);
    own = {to_string(label), ascending(g, BandSet(plan_.band(label)) - x)};
    shared = {"XI", descending(g, x & plan_.occupied(cell))};
  }

  using Prefs = std::vector<const Pool*>;
  Prefs edge, center_rt, center_nrt;
  if (scheme_ == Scheme::Conventional) {
    edge = {&own, &shared};
    center_rt = center_nrt = {&z};
  } else if (reference) {
    edge = {&own, &clean};
    center_rt = {&own, &clean, &z, &shared};
    center_nrt = scheme_ == Scheme::ProposedClassified ? Prefs{&z, &shared, &own, &clean} : center_rt;
  } else {
    edge = {&own, &shared};
    center_rt = center_nrt = {&z, &own, &shared};
  }

  std::set<std::int64_t> taken;
  auto place = [&](const CallRecord& call, const Prefs& prefs) {
    std::vector<std::int64_t> picked;
    std::string first_pool;
    for (const Pool* pool : prefs) {
      for (std::int64_t ch : pool->channels) {
        if (static_cast<int>(picked.size()) == call.channels) break;
        if (taken.count(ch) != 0) continue;
        if (picked.empty()) first_pool = pool->name;
        picked.push_back(ch);
      }
    }
    if (static_cast<int>(picked.size()) < call.channels) return false;
    taken.insert(picked.begin(), picked.end());
    out.slices[call.id] = g.to_band(picked);
    out.pools[call.id] = first_pool;
    return true;
  };

  const bool classified = scheme_ == Scheme::ProposedClassified;
  auto pass = [&](Zone zone, bool want_rt, const Prefs& prefs) {
    for (const auto& [id, call] : calls.active) {
      if (call.zone != zone) continue;
      if (classified && (call.traffic_class == TrafficClass::RT) != want_rt) continue;
      if (!place(call, prefs)) return false;
    }
    return true;
  };

  out = {};
  if (classified) {
    return pass(Zone::Edge, true, edge) && pass(Zone::Edge, false, edge) &&
           pass(Zone::Center, true, center_rt) && pass(Zone::Center, false, center_nrt);
  }
  return pass(Zone::Edge, true, edge) && pass(Zone::Center, true, center_rt);
}

void AdmissionControl::commit(CellIndex cell, CellState& calls, const Placement& placement,
                              std::vector<Reshuffle>* moved) {
  for (auto& [id, call] : calls.active) {
    const BandSet& next = placement.slices.at(id);
    if (moved != nullptr && !call.slice.empty() && call.slice != next) {
      moved->push_back({id, call.slice, next});
    }
    call.slice = next;
  }
  plan_.cell_spectrum(cell).in_use = calls.in_use();
}

int AdmissionControl::good_target(const CellState& calls) const {
  const Zone edge = Zone::Edge, center = Zone::Center;
  const TrafficClass rt = TrafficClass::RT;
  int target = calls.demand(&edge);
  if (scheme_ == Scheme::ProposedClassified) target += calls.demand(&center, &rt);
  return target;
}

void AdmissionControl::borrow_for(const CellState& calls, bool& borrowed) {
  const ChannelGrid& g = plan_.grid();
  const Hz own = plan_.band(BandLabel::C).width();
  const Hz z = plan_.z_band().width();
  const Hz target = static_cast<Hz>(good_target(calls)) * g.width;
  const Hz total = static_cast<Hz>(calls.demand()) * g.width;
  for (;;) {
    const Reassignment r = current_reassignment(plan_);
    const Hz good = own + r.x_clean().measure();
    if (good >= target && good + z + r.x_i.measure() >= total) return;
    try {
      apply_reassignment(plan_, plan_reassignment(kReferenceCell, g.width, plan_));
      borrowed = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientSpectrum) throw;
      return;
    }
  }
}

void AdmissionControl::refresh_reference(const BandSet& x_i_before,
                                         std::vector<Reshuffle>* moved) {
  if (current_reassignment(plan_).x_i == x_i_before) return;
  CellState& ref = cells_[static_cast<std::size_t>(kReferenceCell - 1)];
  Placement placement;
  if (!rebuild(kReferenceCell, ref, placement)) {
    throw Error(ErrorCode::InternalInconsistency, "reference cell no longer fits its calls");
  }
  commit(kReferenceCell, ref, placement, moved);
  return_unused();
}

void AdmissionControl::return_unused() {
  const BandSet unused = current_reassignment(plan_).x() - state(kReferenceCell).in_use();
  if (!unused.empty()) return_borrowed(plan_, unused);
}

AdmissionDecision AdmissionControl::admit(const CallRequest& request) {
  if (request.cell < 1 || request.cell > kClusterCells) {
    throw Error(ErrorCode::InvalidParameter, "request for a cell outside the cluster");
  }
  if (request.channels < 1) throw Error(ErrorCode::InvalidParameter, "request needs channels");

  AdmissionDecision decision;
  CellState trial = state(request.cell);
  const CallId id = next_id_;
  trial.active[id] = CallRecord{id,          request.traffic_class, request.cell, request.zone, {},
                                request.channels, request.time,     request.dwell};

  const bool may_borrow = request.cell == kReferenceCell && scheme_ != Scheme::Conventional;
  std::array<BandSet, kClusterCells> lent_before;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    lent_before[static_cast<std::size_t>(c - 1)] = plan_.cell_spectrum(c).lent;
  }

  const BandSet x_i_before = current_reassignment(plan_).x_i;
  bool borrowed = false;
  if (may_borrow) borrow_for(trial, borrowed);
  Placement placement;
  if (!rebuild(request.cell, trial, placement)) {
    for (CellIndex c = 1; c <= kClusterCells; ++c) {
      plan_.cell_spectrum(c).lent = lent_before[static_cast<std::size_t>(c - 1)];
    }
    decision.reason = "no-spectrum";
    return decision;
  }

  ++next_id_;
  CellState& cell = cells_[static_cast<std::size_t>(request.cell - 1)];
  cell = std::move(trial);
  commit(request.cell, cell, placement, &decision.reshuffled);
  if (request.cell == kReferenceCell) {
    return_unused();
  } else {
    refresh_reference(x_i_before, &decision.reshuffled);
  }
  if (borrowed) ++reassignments_;

  decision.accepted = true;
  decision.id = id;
  decision.slice = cell.active.at(id).slice;
  decision.pool = placement.pools.at(id);
  decision.reassignment_triggered = borrowed;
  return decision;
}

std::vector<Reshuffle> AdmissionControl::release(CallId id) {
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    CellState& cell = cells_[static_cast<std::size_t>(c - 1)];
    if (cell.active.erase(id) == 0) continue;
    const BandSet x_i_before = current_reassignment(plan_).x_i;
    Placement placement;
    if (!rebuild(c, cell, placement)) {
      throw Error(ErrorCode::InternalInconsistency, "repacking failed after a release");
    }
    std::vector<Reshuffle> moved;
    commit(c, cell, placement, &moved);
    if (c == kReferenceCell) {
      return_unused();
    } else {
      refresh_reference(x_i_before, &moved);
    }
    return moved;
  }
  throw Error(ErrorCode::UnknownCall, "no active call with id " + std::to_string(id));
}

void AdmissionControl::check_invariants() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::InternalInconsistency, what);
  };
  const ChannelGrid& g = plan_.grid();
  const Reassignment r = current_reassignment(plan_);
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    const CellState& cs = state(c);
    BandSet seen;
    for (const auto& [id, call] : cs.active) {
      if (call.slice.measure() != call.channels * g.width) fail("slice size mismatch");
      if (seen.intersects(call.slice)) fail("overlapping calls in cell " + std::to_string(c));
      seen |= call.slice;
    }
    if (seen != plan_.cell_spectrum(c).in_use) fail("in-use bookkeeping out of sync");
    if (scheme_ == Scheme::Conventional && !plan_.cell_spectrum(c).lent.empty()) {
      fail("conventional scheme lent spectrum");
    }
  }
  if (!verify_disjointness(plan_, &r).ok) fail("transmit sets overlap");
  if (!r.x().is_subset_of(state(kReferenceCell).in_use())) fail("unused borrowed spectrum kept");

  const BandSet c_band(plan_.band(BandLabel::C));
  const BandSet good = c_band | r.x_clean();
  const BandSet poor = BandSet(plan_.z_band()) | r.x_i;
  bool rt_poor = false, nrt_good = false;
  for (const auto& [id, call] : state(kReferenceCell).active) {
    if (call.zone == Zone::Edge && !call.slice.is_subset_of(good)) fail("edge call outside C and X-XI");
    if (call.zone != Zone::Center) continue;
    if (call.traffic_class == TrafficClass::RT && call.slice.intersects(poor)) rt_poor = true;
    if (call.traffic_class == TrafficClass::NRT && call.slice.intersects(good)) nrt_good = true;
  }
  if (scheme_ == Scheme::ProposedClassified && rt_poor && nrt_good) {
    fail("RT call on Z/XI while an nRT call holds C/X-XI");
  }
}

std::string decision_log_header() { return "time,cell,class,zone,outcome,band,reassignment"; }

std::string decision_log_line(const CallRequest& request, const AdmissionDecision& decision) {
  char t[32];
  std::snprintf(t, sizeof t, "%.6g", request.time);
  std::ostringstream out;
  out << t << ',' << request.cell << ',' << to_string(request.traffic_class) << ','
      << to_string(request.zone) << ',' << (decision.accepted ? "accepted" : "blocked") << ','
      << decision.pool << ',' << (decision.reassignment_triggered ? 1 : 0);
  return out.str();
}

}  // namespace ffr
