#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ffr/band.hpp"
#include "ffr/geometry.hpp"

namespace ffr {

enum class PowerClass { Edge, Center };

const char* to_string(PowerClass p);

/// Per-cell spectrum bookkeeping inside a FrequencyPlan.
struct CellSpectrum {
  BandLabel label = BandLabel::C;
  /// Every channel the MBS currently transmits on (Z and edge bands).
  BandSet in_use;
  /// Part of the own edge band lent to the reference cell.
  BandSet lent;

  friend bool operator==(const CellSpectrum&, const CellSpectrum&) = default;
};

/// Static FFR partition of the system band plus the dynamic per-cell state.
///
/// Layout of the band: Z occupies the bottom, followed by A, B and C of equal
/// width. Occupancy grows from the low edge of each band; the reserve sits
/// directly above it and whatever is left on top is releasable.
class FrequencyPlan {
 public:
  FrequencyPlan(Hz total_bandwidth, Hz z_width, ChannelGrid grid, int reserve_channels);

  Hz total_bandwidth() const { return total_; }
  const ChannelGrid& grid() const { return grid_; }
  BandInterval z_band() const { return z_; }
  BandInterval band(BandLabel label) const;
  BandInterval edge_band(CellIndex cell) const { return band(cell_spectrum(cell).label); }
  int reserve_channels() const { return reserve_channels_; }
  void set_reserve_channels(int n) { reserve_channels_ = n; }
  std::int64_t channels_per_edge_band() const { return band(BandLabel::A).width() / grid_.width; }

  const CellSpectrum& cell_spectrum(CellIndex cell) const;
  CellSpectrum& cell_spectrum(CellIndex cell);

  /// Own edge band in use by the cell.
  BandSet occupied(CellIndex cell) const;
  BandSet reserved(CellIndex cell) const;
  /// Everything lent out of the band carrying `label`, by any co-band cell.
  BandSet lent_from(BandLabel label) const;

  friend bool operator==(const FrequencyPlan&, const FrequencyPlan&) = default;

 private:
  Hz total_;
  ChannelGrid grid_;
  BandInterval z_;
  std::array<BandInterval, 3> edge_;
  int reserve_channels_;
  std::array<CellSpectrum, kClusterCells> cells_;
};

/// Builds the Z/A/B/C partition. Throws AlignmentError when Z or the edge
/// sub-bands do not fall on the channel grid.
FrequencyPlan initial_plan(Hz total_bandwidth, double z_fraction, Hz channel_bandwidth = 180'000,
                           double reserve_fraction = 0.05);

/// Bands borrowed by the reference cell and the interference they cause.
struct Reassignment {
  BandSet x_a;
  BandSet x_b;
  /// Portion of x_a | x_b overlapping some co-band cell's occupied spectrum.
  BandSet x_i;
  std::map<CellIndex, BandSet> affected_cells;
  std::map<CellIndex, BandSet> lender_cells;

  BandSet x() const { return x_a | x_b; }
  /// X - X_I, usable at edge power.
  BandSet x_clean() const { return x() - x_i; }
  bool active() const { return !x_a.empty() || !x_b.empty(); }

  friend bool operator==(const Reassignment&, const Reassignment&) = default;
};

/// Reassignment implied by the plan's current lending and occupancy.
Reassignment current_reassignment(const FrequencyPlan& plan);

/// Own edge band minus occupied, reserved and anything already lent out of it.
BandSet releasable(CellIndex cell, const FrequencyPlan& plan);

/// Extends the current borrowing of the reference cell by `demand` Hz (rounded
/// up to whole channels). The lender per band is the co-band cell with the
/// most releasable spectrum; slices are taken top-down, each step choosing
/// the band whose next slice overlaps the fewest occupied co-band cells
/// (ties favour A). Returns the resulting total reassignment; the plan is not
/// modified. Throws InsufficientSpectrum.
Reassignment plan_reassignment(CellIndex requesting_cell, Hz demand, const FrequencyPlan& plan);

/// Writes the lenders' slices of `r` into the plan.
void apply_reassignment(FrequencyPlan& plan, const Reassignment& r);

/// Hands back borrowed spectrum to whichever cell lent it.
void return_borrowed(FrequencyPlan& plan, const BandSet& slice);

BandSet allowed_small_cell_bands(CellIndex cell, Zone zone, const FrequencyPlan& plan,
                                 const Reassignment* reassignment = nullptr);

/// Bands each MBS transmits per zone and each small-cell tier may use.
struct CellTransmitSets {
  BandSet center;
  BandSet edge;
};

struct TransmitSets {
  std::array<CellTransmitSets, kClusterCells> macro;
  std::array<CellTransmitSets, kClusterCells> small;  // allowed small-cell bands per zone

  CellTransmitSets& macro_of(CellIndex c) { return macro[static_cast<std::size_t>(c - 1)]; }
  const CellTransmitSets& macro_of(CellIndex c) const {
    return macro[static_cast<std::size_t>(c - 1)];
  }
  CellTransmitSets& small_of(CellIndex c) { return small[static_cast<std::size_t>(c - 1)]; }
  const CellTransmitSets& small_of(CellIndex c) const {
    return small[static_cast<std::size_t>(c - 1)];
  }
};

/// Reference cell: center = Z | X_I, edge = C | (X - X_I). Other cells:
/// center = Z | (X & occupied), edge = own band - X.
TransmitSets transmit_sets(const FrequencyPlan& plan, const Reassignment* reassignment);

PowerClass power_class(const TransmitSets& sets, CellIndex cell, Hz offset);

struct DisjointnessViolation {
  std::string rule;
  CellIndex first = 0;
  CellIndex second = 0;
  BandSet overlap;
};

struct DisjointnessReport {
  bool ok = true;
  std::vector<DisjointnessViolation> violations;
};

DisjointnessReport verify_disjointness(const TransmitSets& sets);
DisjointnessReport verify_disjointness(const FrequencyPlan& plan,
                                       const Reassignment* reassignment = nullptr);

/// One row per band edge pair: kind,cell,label,lo_hz,hi_hz.
std::string dump_plan_csv(const FrequencyPlan& plan, const Reassignment* reassignment);

}  // namespace ffr
