#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ffr/error.hpp"
#include "ffr/geometry.hpp"

using namespace ffr;

namespace {

// Independent point-in-hexagon test: flat-top hexagon as six half-planes.
bool inside_hexagon(Point c, double radius, Point p) {
  for (int k = 0; k < 6; ++k) {
    const double a0 = k * std::numbers::pi / 3.0;
    const double a1 = (k + 1) * std::numbers::pi / 3.0;
    const Point v0{c.x + radius * std::cos(a0), c.y + radius * std::sin(a0)};
    const Point v1{c.x + radius * std::cos(a1), c.y + radius * std::sin(a1)};
    const double cross = (v1.x - v0.x) * (p.y - v0.y) - (v1.y - v0.y) * (p.x - v0.x);
    if (cross < -1e-9) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {1000, 0}) == doctest::Approx(1000.0));
}

TEST_CASE("cluster layout") {
  for (double isd : {1000.0, 2000.0}) {
    const auto layout = build_cluster(isd, isd / 4);
    REQUIRE(layout.cells().size() == 19);
    CHECK(layout.cell(kReferenceCell).mbs == Point{0, 0});
    CHECK(layout.cell_radius() == doctest::Approx(isd / std::sqrt(3.0)));
    for (const auto& a : layout.cells()) {
      double nearest = 1e18;
      for (const auto& b : layout.cells()) {
        if (a.index != b.index) nearest = std::min(nearest, distance(a.mbs, b.mbs));
      }
      CHECK(nearest == doctest::Approx(isd));
    }
    for (CellIndex c = 1; c <= 6; ++c) {
      CHECK(distance(layout.cell(c).mbs, {0, 0}) == doctest::Approx(isd));
    }
    int near = 0, far = 0;
    for (CellIndex c = 8; c <= 19; ++c) {
      const double d = distance(layout.cell(c).mbs, {0, 0});
      if (std::abs(d - std::sqrt(3.0) * isd) < 1e-6) ++near;
      if (std::abs(d - 2 * isd) < 1e-6) ++far;
    }
    CHECK(near == 6);
    CHECK(far == 6);
  }
}

TEST_CASE("band labels follow the reuse-3 pattern") {
  const auto layout = build_cluster(1000, 250);
  CHECK(layout.label(7) == BandLabel::C);
  for (CellIndex c : {2, 4, 6}) CHECK(layout.label(c) == BandLabel::A);
  for (CellIndex c : {1, 3, 5}) CHECK(layout.label(c) == BandLabel::B);
  // Co-labelled cells are never neighbours.
  for (const auto& a : layout.cells()) {
    for (const auto& b : layout.cells()) {
      if (a.index < b.index && distance(a.mbs, b.mbs) < 1000 * 1.01) {
        CHECK(a.label != b.label);
      }
    }
  }
  for (CellIndex c = 8; c <= 19; ++c) {
    const auto& site = layout.cell(c);
    REQUIRE(site.mirror >= 1);
    REQUIRE(site.mirror <= 7);
    CHECK(site.label == layout.label(site.mirror));
  }
}

TEST_CASE("invalid layouts") {
  CHECK_THROWS_AS(build_cluster(0, 100), Error);
  CHECK_THROWS_AS(build_cluster(1000, 0), Error);
  CHECK_THROWS_AS(build_cluster(1000, 500), Error);
  const auto layout = build_cluster(1000, 250);
  CHECK_THROWS_AS(layout.cell(0), Error);
  CHECK_THROWS_AS(layout.cell(20), Error);
}

TEST_CASE("zone classification") {
  const auto layout = build_cluster(1000, 250);
  CHECK(classify_zone(layout.point_at(7, 240, 0.3), 7, layout) == Zone::Center);
  CHECK(classify_zone(layout.point_at(7, 420, 1.1), 7, layout) == Zone::Edge);
  CHECK(classify_zone({250, 0}, 7, layout) == Zone::Center);
  CHECK(classify_zone(layout.point_at(3, 300, 2.0), 3, layout) == Zone::Edge);
  try {
    classify_zone({900, 0}, 7, layout);
    FAIL("expected outside-cell");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideCell);
  }
}

TEST_CASE("small cell placement") {
  const auto layout = build_cluster(1000, 250);
  for (CellIndex cell : {7, 2, 5}) {
    const auto sites = place_small_cells(cell, 100, 1, layout);
    REQUIRE(sites.size() == 100);
    for (const auto& s : sites) {
      CHECK(s.host_cell == cell);
      CHECK(inside_hexagon(layout.cell(cell).mbs, layout.cell_radius(), s.position));
      CHECK(s.zone == classify_zone(s.position, cell, layout));
    }
  }
  CHECK(place_small_cells(7, 0, 9, layout).empty());
  const auto a = place_small_cells(7, 100, 1, layout);
  const auto b = place_small_cells(7, 100, 1, layout);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].position == b[i].position);
  const auto c = place_small_cells(7, 100, 2, layout);
  CHECK_FALSE(a[0].position == c[0].position);
}

TEST_CASE("center area fraction matches sampling") {
  const auto layout = build_cluster(1000, 250);
  const auto sites = place_small_cells(7, 20000, 3, layout);
  const auto centers = std::count_if(sites.begin(), sites.end(),
                                     [](const SmallCellSite& s) { return s.zone == Zone::Center; });
  const double hex_area = 1.5 * std::sqrt(3.0) * std::pow(layout.cell_radius(), 2);
  const double expected = std::numbers::pi * 250.0 * 250.0 / hex_area;
  CHECK(layout.center_area_fraction() == doctest::Approx(expected).epsilon(1e-9));
  CHECK(static_cast<double>(centers) / 20000.0 == doctest::Approx(expected).epsilon(0.05));
}
