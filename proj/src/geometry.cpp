#include "ffr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "ffr/error.hpp"

namespace ffr {

namespace {

struct Axial {
  int q;
  int r;
};

// Counter-clockwise first ring; odd positions get label B, even ones A.
constexpr std::array<Axial, 6> kFirstRing{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

// Shifts of length sqrt(3)*isd that preserve the reuse-3 colouring.
constexpr std::array<Axial, 6> kReuseShifts{{{1, 1}, {-1, 2}, {-2, 1}, {-1, -1}, {1, -2}, {2, -1}}};

int hex_norm(Axial a) { return std::max({std::abs(a.q), std::abs(a.r), std::abs(a.q + a.r)}); }

BandLabel colour(Axial a) {
  switch (((a.q - a.r) % 3 + 3) % 3) {
    case 0: return BandLabel::C;
    case 1: return BandLabel::B;
    default: return BandLabel::A;
  }
}

Point to_point(Axial a, double radius) {
  return {radius * 1.5 * a.q, radius * std::sqrt(3.0) * (a.r + 0.5 * a.q)};
}

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

BandLabel cluster_label(CellIndex cell) {
  if (cell < 1 || cell > kClusterCells) {
    throw Error(ErrorCode::InvalidParameter, "not a cluster cell: " + std::to_string(cell));
  }
  if (cell == kReferenceCell) return BandLabel::C;
  return cell % 2 == 1 ? BandLabel::B : BandLabel::A;
}

const char* to_string(Zone z) { return z == Zone::Center ? "center" : "edge"; }

const char* to_string(BandLabel l) {
  switch (l) {
    case BandLabel::A: return "A";
    case BandLabel::B: return "B";
    case BandLabel::C: return "C";
  }
  return "?";
}

ClusterLayout::ClusterLayout(double inter_site_distance, double center_radius)
    : isd_(inter_site_distance),
      center_radius_(center_radius),
      cell_radius_(inter_site_distance / std::sqrt(3.0)) {
  if (!(inter_site_distance > 0.0) || !std::isfinite(inter_site_distance)) {
    throw Error(ErrorCode::InvalidParameter, "inter-site distance must be positive");
  }
  if (!(center_radius > 0.0) || !(center_radius < inter_site_distance / 2.0)) {
    throw Error(ErrorCode::InvalidParameter,
                "center radius must lie in (0, inter_site_distance/2)");
  }

  std::vector<Axial> axial;
  for (const auto& a : kFirstRing) axial.push_back(a);
  axial.push_back({0, 0});

  std::vector<Axial> ring2;
  for (int q = -2; q <= 2; ++q) {
    for (int r = -2; r <= 2; ++r) {
      if (hex_norm({q, r}) == 2) ring2.push_back({q, r});
    }
  }
  std::sort(ring2.begin(), ring2.end(), [&](Axial a, Axial b) {
    const Point pa = to_point(a, 1.0);
    const Point pb = to_point(b, 1.0);
    auto bearing = [](Point p) {
      double t = std::atan2(p.y, p.x);
      return t < -1e-9 ? t + 2 * std::numbers::pi : t;
    };
    return bearing(pa) < bearing(pb);
  });
  axial.insert(axial.end(), ring2.begin(), ring2.end());

  cells_.reserve(axial.size());
  for (std::size_t i = 0; i < axial.size(); ++i) {
    CellSite site;
    site.index = static_cast<CellIndex>(i + 1);
    site.mbs = to_point(axial[i], cell_radius_);
    site.label = colour(axial[i]);
    if (site.index <= kClusterCells) {
      site.mirror = site.index;
    } else {
      for (const auto& shift : kReuseShifts) {
        const Axial src{axial[i].q - shift.q, axial[i].r - shift.r};
        auto it = std::find_if(axial.begin(), axial.begin() + kClusterCells,
                               [&](Axial a) { return a.q == src.q && a.r == src.r; });
        if (it != axial.begin() + kClusterCells) {
          site.mirror = static_cast<CellIndex>(it - axial.begin() + 1);
          break;
        }
      }
    }
    cells_.push_back(site);
  }
}

const CellSite& ClusterLayout::cell(CellIndex i) const {
  if (i < 1 || i > static_cast<CellIndex>(cells_.size())) {
    throw Error(ErrorCode::InvalidParameter, "cell index out of range: " + std::to_string(i));
  }
  return cells_[static_cast<std::size_t>(i - 1)];
}

bool ClusterLayout::contains(CellIndex c, Point p) const {
  const Point m = cell(c).mbs;
  const double dx = std::abs(p.x - m.x);
  const double dy = std::abs(p.y - m.y);
  const double eps = 1e-9 * cell_radius_;
  const double s3 = std::sqrt(3.0);
  return dy <= s3 / 2.0 * cell_radius_ + eps && s3 * dx + dy <= s3 * cell_radius_ + eps;
}

double ClusterLayout::center_area_fraction() const {
  const double hex_area = 1.5 * std::sqrt(3.0) * cell_radius_ * cell_radius_;
  return std::numbers::pi * center_radius_ * center_radius_ / hex_area;
}

Point ClusterLayout::point_at(CellIndex c, double dist, double angle) const {
  const Point m = cell(c).mbs;
  return {m.x + dist * std::cos(angle), m.y + dist * std::sin(angle)};
}

ClusterLayout build_cluster(double inter_site_distance, double center_radius) {
  return ClusterLayout(inter_site_distance, center_radius);
}

Zone classify_zone(Point p, CellIndex cell, const ClusterLayout& layout) {
  if (!layout.contains(cell, p)) {
    throw Error(ErrorCode::OutsideCell, "point lies outside cell " + std::to_string(cell));
  }
  return distance(p, layout.cell(cell).mbs) <= layout.center_radius() ? Zone::Center
                                                                       : Zone::Edge;
}

Point random_point_in_cell(CellIndex cell, const ClusterLayout& layout, std::mt19937_64& rng) {
  const double r = layout.cell_radius();
  std::uniform_real_distribution<double> ux(-r, r);
  std::uniform_real_distribution<double> uy(-r * std::sqrt(3.0) / 2.0, r * std::sqrt(3.0) / 2.0);
  const Point m = layout.cell(cell).mbs;
  for (;;) {
    const Point p{m.x + ux(rng), m.y + uy(rng)};
    if (layout.contains(cell, p)) return p;
  }
}

std::vector<SmallCellSite> place_small_cells(CellIndex cell, int count, std::uint64_t rng_seed,
                                             const ClusterLayout& layout) {
  std::vector<SmallCellSite> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  std::mt19937_64 rng(rng_seed);
  while (static_cast<int>(out.size()) < count) {
    const Point p = random_point_in_cell(cell, layout, rng);
    out.push_back({p, cell, classify_zone(p, cell, layout)});
  }
  return out;
}

}  // namespace ffr
