#include <doctest.h>

#include <bitset>
#include <ostream>
#include <random>

#include "ffr/band.hpp"

using namespace ffr;

namespace {

constexpr Hz kRes = 10'000;
constexpr int kBins = 400;
using Bitmap = std::bitset<kBins>;

Bitmap rasterize(const BandSet& s) {
  Bitmap b;
  for (const auto& iv : s.intervals()) {
    for (Hz f = iv.lo; f < iv.hi; f += kRes) b.set(static_cast<std::size_t>(f / kRes));
  }
  return b;
}

BandSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> edge(0, kBins);
  std::vector<BandInterval> ivs;
  for (int n = count(rng); n > 0; --n) {
    int a = edge(rng), b = edge(rng);
    if (a > b) std::swap(a, b);
    ivs.push_back({a * kRes, b * kRes});
  }
  return BandSet::from_intervals(ivs);
}

bool canonical(const BandSet& s) {
  const auto& v = s.intervals();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].empty()) return false;
    if (i > 0 && v[i - 1].hi >= v[i].lo) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("band set algebra agrees with a 10 kHz bitmap") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 2000; ++trial) {
    const BandSet a = random_set(rng);
    const BandSet b = random_set(rng);
    const Bitmap ba = rasterize(a), bb = rasterize(b);

    const BandSet u = a | b, i = a & b, d = a - b;
    CHECK(canonical(u));
    CHECK(canonical(i));
    CHECK(canonical(d));
    CHECK(rasterize(u) == (ba | bb));
    CHECK(rasterize(i) == (ba & bb));
    CHECK(rasterize(d) == (ba & ~bb));
    CHECK(a.measure() == static_cast<Hz>(ba.count()) * kRes);
    CHECK(a.intersects(b) == (ba & bb).any());
    CHECK(a.is_subset_of(b) == ((ba & ~bb).none()));
  }
}

TEST_CASE("adjacent and overlapping intervals merge") {
  const BandSet s{{0, 10}, {10, 20}, {15, 30}, {40, 50}, {45, 45}};
  REQUIRE(s.intervals().size() == 2);
  CHECK(s.intervals()[0] == BandInterval{0, 30});
  CHECK(s.intervals()[1] == BandInterval{40, 50});
  CHECK(s.measure() == 40);
  CHECK(s.lowest() == 0);
  CHECK(s.highest() == 50);
  CHECK(s.contains(29));
  CHECK_FALSE(s.contains(30));
  CHECK(s.contains(BandInterval{40, 50}));
  CHECK_FALSE(s.contains(BandInterval{25, 45}));
}

TEST_CASE("empty set") {
  const BandSet e;
  CHECK(e.empty());
  CHECK(e.measure() == 0);
  CHECK(e.to_string() == "{}");
  CHECK((e | BandSet{{1, 2}}) == BandSet{{1, 2}});
  CHECK((BandSet{{1, 2}} - BandSet{{0, 5}}).empty());
}

TEST_CASE("channel grid") {
  const ChannelGrid g{180'000};
  CHECK(g.channel(2) == BandInterval{360'000, 540'000});
  CHECK(g.aligned(3'600'000));
  CHECK_FALSE(g.aligned(4'000'000));
  const BandSet s{{0, 400'000}, {540'000, 900'000}};
  const auto ch = g.channels_in(s);
  CHECK(ch == std::vector<std::int64_t>{0, 1, 3, 4});
  CHECK(g.to_band({0, 1, 3, 4}) == BandSet{{0, 360'000}, {540'000, 900'000}});
  CHECK(g.count(g.to_band({5, 6, 7})) == 3);
}
