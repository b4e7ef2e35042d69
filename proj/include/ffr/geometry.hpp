#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace ffr {

struct Point {
  double x = 0.0;  // m
  double y = 0.0;  // m

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

enum class Zone { Center, Edge };
enum class BandLabel { A, B, C };

const char* to_string(Zone z);
const char* to_string(BandLabel l);

/// Cells 1..6 form the first tier around the reference cell 7; cells 8..19
/// are the second tier.
using CellIndex = int;
inline constexpr CellIndex kReferenceCell = 7;
inline constexpr int kClusterCells = 7;
inline constexpr int kSecondTierCells = 12;
inline constexpr int kTotalCells = kClusterCells + kSecondTierCells;

/// Edge-band label of a cluster cell: 7 -> C, odd -> B, even -> A.
BandLabel cluster_label(CellIndex cell);

struct CellSite {
  CellIndex index = 0;
  Point mbs;
  BandLabel label = BandLabel::C;
  /// Cluster cell (1..7) whose band usage this cell replicates. A cluster cell
  /// mirrors itself.
  CellIndex mirror = 0;
};

/// Flat-top hexagonal layout: the reference cell at the origin, six first-tier
/// neighbours and the twelve cells of the second ring.
class ClusterLayout {
 public:
  ClusterLayout(double inter_site_distance, double center_radius);

  double inter_site_distance() const { return isd_; }
  double center_radius() const { return center_radius_; }
  /// Hexagon circumradius, isd / sqrt(3).
  double cell_radius() const { return cell_radius_; }

  const CellSite& cell(CellIndex i) const;
  const std::vector<CellSite>& cells() const { return cells_; }
  BandLabel label(CellIndex i) const { return cell(i).label; }

  bool contains(CellIndex cell, Point p) const;
  /// Fraction of a cell's area that lies in the center zone.
  double center_area_fraction() const;
  /// Point at `dist` metres from the cell's MBS along bearing `angle` (rad).
  Point point_at(CellIndex cell, double dist, double angle) const;

 private:
  double isd_;
  double center_radius_;
  double cell_radius_;
  std::vector<CellSite> cells_;  // cells_[i - 1] is cell i
};

ClusterLayout build_cluster(double inter_site_distance, double center_radius);

/// Center iff the point is within center_radius of the serving MBS (closed disk).
Zone classify_zone(Point p, CellIndex cell, const ClusterLayout& layout);

struct SmallCellSite {
  Point position;
  CellIndex host_cell = kReferenceCell;
  Zone zone = Zone::Center;
};

/// Uniform position inside the cell hexagon (rejection sampling).
Point random_point_in_cell(CellIndex cell, const ClusterLayout& layout, std::mt19937_64& rng);

/// Uniform positions inside the host hexagon, deterministic in `rng_seed`.
std::vector<SmallCellSite> place_small_cells(CellIndex cell, int count, std::uint64_t rng_seed,
                                             const ClusterLayout& layout);

}  // namespace ffr
