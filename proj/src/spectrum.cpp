#include "ffr/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "ffr/error.hpp"

namespace ffr {

namespace {

constexpr std::array<BandLabel, 3> kLabels{BandLabel::A, BandLabel::B, BandLabel::C};

std::vector<CellIndex> co_band_cells(BandLabel label) {
  std::vector<CellIndex> out;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (c != kReferenceCell && cluster_label(c) == label) out.push_back(c);
  }
  return out;
}

}  // namespace

const char* to_string(PowerClass p) { return p == PowerClass::Edge ? "edge" : "center"; }

FrequencyPlan::FrequencyPlan(Hz total_bandwidth, Hz z_width, ChannelGrid grid,
                             int reserve_channels)
    : total_(total_bandwidth), grid_(grid), z_{0, z_width}, reserve_channels_(reserve_channels) {
  const Hz w = (total_bandwidth - z_width) / 3;
  for (std::size_t i = 0; i < 3; ++i) {
    edge_[i] = {z_width + static_cast<Hz>(i) * w, z_width + static_cast<Hz>(i + 1) * w};
  }
  for (CellIndex c = 1; c <= kClusterCells; ++c) cell_spectrum(c).label = cluster_label(c);
}

BandInterval FrequencyPlan::band(BandLabel label) const {
  return edge_[static_cast<std::size_t>(label)];
}

const CellSpectrum& FrequencyPlan::cell_spectrum(CellIndex cell) const {
  if (cell < 1 || cell > kClusterCells) {
    throw Error(ErrorCode::InvalidParameter, "not a cluster cell: " + std::to_string(cell));
  }
  return cells_[static_cast<std::size_t>(cell - 1)];
}

CellSpectrum& FrequencyPlan::cell_spectrum(CellIndex cell) {
  return const_cast<CellSpectrum&>(std::as_const(*this).cell_spectrum(cell));
}

BandSet FrequencyPlan::occupied(CellIndex cell) const {
  return cell_spectrum(cell).in_use & BandSet(edge_band(cell));
}

BandSet FrequencyPlan::lent_from(BandLabel label) const {
  BandSet out;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (cell_spectrum(c).label == label) out |= cell_spectrum(c).lent;
  }
  return out;
}

BandSet FrequencyPlan::reserved(CellIndex cell) const {
  const BandSet own(edge_band(cell));
  const BandSet free = own - occupied(cell) - lent_from(cell_spectrum(cell).label);
  auto channels = grid_.channels_in(free);
  if (channels.size() > static_cast<std::size_t>(reserve_channels_)) {
    channels.resize(static_cast<std::size_t>(reserve_channels_));
  }
  return grid_.to_band(channels);
}

FrequencyPlan initial_plan(Hz total_bandwidth, double z_fraction, Hz channel_bandwidth,
                           double reserve_fraction) {
  if (total_bandwidth <= 0) {
    throw Error(ErrorCode::InvalidParameter, "total bandwidth must be positive");
  }
  if (!(z_fraction > 0.0 && z_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "z_fraction must lie in (0, 1)");
  }
  if (channel_bandwidth <= 0) {
    throw Error(ErrorCode::InvalidParameter, "channel bandwidth must be positive");
  }
  if (!(reserve_fraction >= 0.0 && reserve_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "reserve fraction must lie in [0, 1]");
  }
  const Hz z = std::llround(z_fraction * static_cast<double>(total_bandwidth));
  const Hz rest = total_bandwidth - z;
  const ChannelGrid grid{channel_bandwidth};
  if (rest % 3 != 0 || !grid.aligned(rest / 3) || !grid.aligned(z)) {
    std::ostringstream msg;
    msg << "Z = " << z << " Hz and edge sub-bands of " << rest / 3.0
        << " Hz do not fall on the " << channel_bandwidth << " Hz channel grid";
    throw Error(ErrorCode::AlignmentError, msg.str());
  }
  const Hz per_band_channels = rest / 3 / channel_bandwidth;
  const int reserve =
      static_cast<int>(std::llround(reserve_fraction * static_cast<double>(per_band_channels)));
  return FrequencyPlan(total_bandwidth, z, grid, reserve);
}

BandSet releasable(CellIndex cell, const FrequencyPlan& plan) {
  const BandSet own(plan.edge_band(cell));
  return own - plan.occupied(cell) - plan.reserved(cell) -
         plan.lent_from(plan.cell_spectrum(cell).label);
}

Reassignment current_reassignment(const FrequencyPlan& plan) {
  Reassignment r;
  BandSet occupied_any;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (c == kReferenceCell) continue;
    const auto& cs = plan.cell_spectrum(c);
    if (!cs.lent.empty()) r.lender_cells[c] = cs.lent;
    if (cs.label == BandLabel::A) r.x_a |= cs.lent;
    if (cs.label == BandLabel::B) r.x_b |= cs.lent;
  }
  const BandSet x = r.x();
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (c == kReferenceCell) continue;
    const BandSet hit = x & plan.occupied(c);
    if (!hit.empty()) r.affected_cells[c] = hit;
    occupied_any |= hit;
  }
  r.x_i = occupied_any;
  return r;
}

Reassignment plan_reassignment(CellIndex requesting_cell, Hz demand, const FrequencyPlan& plan) {
  if (requesting_cell != kReferenceCell) {
    throw Error(ErrorCode::InvalidParameter, "only the reference cell borrows spectrum");
  }
  if (demand <= 0) throw Error(ErrorCode::InvalidParameter, "demand must be positive");
  const ChannelGrid& grid = plan.grid();
  const std::int64_t needed = (demand + grid.width - 1) / grid.width;

  struct Source {
    BandLabel label;
    CellIndex lender = 0;
    std::vector<std::int64_t> channels;  // top-down
    std::vector<CellIndex> peers;
    std::size_t next = 0;
  };
  std::array<Source, 2> sources;
  sources[0].label = BandLabel::A;
  sources[1].label = BandLabel::B;
  for (auto& src : sources) {
    Hz best = -1;
    for (CellIndex c : co_band_cells(src.label)) {
      const Hz m = releasable(c, plan).measure();
      if (m > best) {
        best = m;
        src.lender = c;
      }
    }
    src.channels = grid.channels_in(releasable(src.lender, plan));
    std::reverse(src.channels.begin(), src.channels.end());
    for (CellIndex c : co_band_cells(src.label)) {
      if (c != src.lender) src.peers.push_back(c);
    }
  }

  const auto available = static_cast<std::int64_t>(sources[0].channels.size() +
                                                    sources[1].channels.size());
  if (needed > available) {
    std::ostringstream msg;
    msg << "demand of " << needed << " channels exceeds the " << available
        << " releasable channels of the lenders";
    throw Error(ErrorCode::InsufficientSpectrum, msg.str());
  }

  auto interference = [&](const Source& src) -> int {
    const BandInterval ch = grid.channel(src.channels[src.next]);
    int n = 0;
    for (CellIndex p : src.peers) n += plan.occupied(p).contains(ch) ? 1 : 0;
    return n;
  };

  std::array<std::vector<std::int64_t>, 2> taken;
  for (std::int64_t k = 0; k < needed; ++k) {
    int pick = -1;
    int best = 0;
    for (int s = 0; s < 2; ++s) {
      if (sources[s].next >= sources[s].channels.size()) continue;
      const int inc = interference(sources[s]);
      if (pick < 0 || inc < best) {
        pick = s;
        best = inc;
      }
    }
    taken[pick].push_back(sources[pick].channels[sources[pick].next++]);
  }

  FrequencyPlan next = plan;
  for (int s = 0; s < 2; ++s) {
    if (taken[s].empty()) continue;
    next.cell_spectrum(sources[s].lender).lent |= grid.to_band(taken[s]);
  }
  return current_reassignment(next);
}

void apply_reassignment(FrequencyPlan& plan, const Reassignment& r) {
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (c == kReferenceCell) continue;
    auto it = r.lender_cells.find(c);
    plan.cell_spectrum(c).lent = it == r.lender_cells.end() ? BandSet{} : it->second;
  }
}

void return_borrowed(FrequencyPlan& plan, const BandSet& slice) {
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    if (c == kReferenceCell) continue;
    plan.cell_spectrum(c).lent -= slice;
  }
}

BandSet allowed_small_cell_bands(CellIndex cell, Zone zone, const FrequencyPlan& plan,
                                 const Reassignment* reassignment) {
  const BandLabel own = plan.cell_spectrum(cell).label;
  BandSet out;
  if (cell == kReferenceCell && reassignment != nullptr && reassignment->active()) {
    out = (BandSet(plan.band(BandLabel::A)) - reassignment->x_a) |
          (BandSet(plan.band(BandLabel::B)) - reassignment->x_b);
    if (zone == Zone::Edge) out |= BandSet(plan.z_band()) | reassignment->x_i;
    return out;
  }
  for (BandLabel l : kLabels) {
    if (l != own) out |= BandSet(plan.band(l));
  }
  if (zone == Zone::Edge) out |= BandSet(plan.z_band());
  return out;
}

TransmitSets transmit_sets(const FrequencyPlan& plan, const Reassignment* reassignment) {
  const Reassignment none;
  const Reassignment& r = reassignment != nullptr ? *reassignment : none;
  const BandSet x = r.x();
  TransmitSets sets;
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    auto& m = sets.macro_of(c);
    if (c == kReferenceCell) {
      m.center = BandSet(plan.z_band()) | r.x_i;
      m.edge = BandSet(plan.edge_band(c)) | r.x_clean();
    } else {
      m.center = BandSet(plan.z_band()) | (x & plan.occupied(c));
      m.edge = BandSet(plan.edge_band(c)) - x;
    }
    auto& s = sets.small_of(c);
    s.center = allowed_small_cell_bands(c, Zone::Center, plan, reassignment);
    s.edge = allowed_small_cell_bands(c, Zone::Edge, plan, reassignment);
  }
  return sets;
}

PowerClass power_class(const TransmitSets& sets, CellIndex cell, Hz offset) {
  return sets.macro_of(cell).center.contains(offset) ? PowerClass::Center : PowerClass::Edge;
}

DisjointnessReport verify_disjointness(const TransmitSets& sets) {
  DisjointnessReport report;
  auto check = [&](const char* rule, CellIndex a, CellIndex b, const BandSet& s1,
                   const BandSet& s2) {
    BandSet overlap = s1 & s2;
    if (!overlap.empty()) {
      report.ok = false;
      report.violations.push_back({rule, a, b, std::move(overlap)});
    }
  };
  const auto& ref = sets.macro_of(kReferenceCell);
  for (CellIndex j = 1; j <= kClusterCells; ++j) {
    if (j == kReferenceCell) continue;
    check("edge-edge", kReferenceCell, j, ref.edge, sets.macro_of(j).edge);
    check("edge-center", kReferenceCell, j, ref.edge, sets.macro_of(j).center);
  }
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    check("small-center", c, c, sets.macro_of(c).center, sets.small_of(c).center);
    check("small-edge", c, c, sets.macro_of(c).edge, sets.small_of(c).edge);
  }
  return report;
}

DisjointnessReport verify_disjointness(const FrequencyPlan& plan,
                                       const Reassignment* reassignment) {
  DisjointnessReport report = verify_disjointness(transmit_sets(plan, reassignment));
  auto fail = [&](const char* rule, CellIndex a, CellIndex b, BandSet overlap) {
    report.ok = false;
    report.violations.push_back({rule, a, b, std::move(overlap)});
  };

  // Static partition: Z, A, B, C tile the system band.
  const BandSet z(plan.z_band());
  BandSet all = z;
  for (BandLabel l : kLabels) {
    const BandSet b(plan.band(l));
    if (all.intersects(b)) fail("tiling", 0, 0, all & b);
    all |= b;
  }
  if (all != BandSet(BandInterval{0, plan.total_bandwidth()})) {
    fail("tiling", 0, 0, BandSet(BandInterval{0, plan.total_bandwidth()}) - all);
  }

  if (reassignment != nullptr) {
    // Lenders never lend what they use or hold in reserve.
    for (const auto& [cell, slice] : reassignment->lender_cells) {
      const BandSet used = plan.occupied(cell) | plan.reserved(cell);
      if (slice.intersects(used)) fail("lender-safety", kReferenceCell, cell, slice & used);
    }
    if (!reassignment->x_i.is_subset_of(reassignment->x())) {
      fail("x_i-subset", kReferenceCell, kReferenceCell, reassignment->x_i - reassignment->x());
    }
  }
  return report;
}

std::string dump_plan_csv(const FrequencyPlan& plan, const Reassignment* reassignment) {
  std::ostringstream out;
  out << "kind,cell,label,lo_hz,hi_hz\n";
  auto rows = [&](const char* kind, CellIndex cell, const char* label, const BandSet& s) {
    for (const auto& iv : s.intervals()) {
      out << kind << ',' << cell << ',' << label << ',' << iv.lo << ',' << iv.hi << '\n';
    }
  };
  rows("band", 0, "Z", BandSet(plan.z_band()));
  for (BandLabel l : kLabels) rows("band", 0, to_string(l), BandSet(plan.band(l)));
  for (CellIndex c = 1; c <= kClusterCells; ++c) {
    const char* label = to_string(plan.cell_spectrum(c).label);
    rows("in_use", c, label, plan.cell_spectrum(c).in_use);
    rows("occupied", c, label, plan.occupied(c));
    rows("reserved", c, label, plan.reserved(c));
    rows("lent", c, label, plan.cell_spectrum(c).lent);
  }
  if (reassignment != nullptr) {
    rows("x_a", kReferenceCell, "A", reassignment->x_a);
    rows("x_b", kReferenceCell, "B", reassignment->x_b);
    rows("x_i", kReferenceCell, "", reassignment->x_i);
    for (const auto& [cell, slice] : reassignment->affected_cells) {
      rows("affected", cell, to_string(plan.cell_spectrum(cell).label), slice);
    }
  }
  return out.str();
}

}  // namespace ffr
