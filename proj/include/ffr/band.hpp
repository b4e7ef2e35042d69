#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ffr {

/// Frequency offset or width in Hz. Integral so that band arithmetic is exact.
using Hz = std::int64_t;

/// Half-open interval [lo, hi) of frequency offsets.
struct BandInterval {
  Hz lo = 0;
  Hz hi = 0;

  Hz width() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool contains(Hz f) const { return lo <= f && f < hi; }

  friend bool operator==(const BandInterval&, const BandInterval&) = default;
};

/// Canonical set of frequencies: sorted, pairwise disjoint, non-adjacent
/// intervals. Every mutating operation restores the canonical form.
class BandSet {
 public:
  BandSet() = default;
  BandSet(BandInterval iv);  // NOLINT(google-explicit-constructor)
  BandSet(std::initializer_list<BandInterval> ivs);
  static BandSet from_intervals(std::vector<BandInterval> ivs);

  const std::vector<BandInterval>& intervals() const { return ivs_; }
  bool empty() const { return ivs_.empty(); }
  Hz measure() const;
  bool contains(Hz f) const;
  bool contains(const BandInterval& iv) const;
  bool intersects(const BandSet& other) const;
  bool is_subset_of(const BandSet& other) const;
  /// Smallest contained offset; the set must be non-empty.
  Hz lowest() const;
  /// Exclusive upper edge of the last interval.
  Hz highest() const;

  BandSet operator|(const BandSet& o) const;
  BandSet operator&(const BandSet& o) const;
  BandSet operator-(const BandSet& o) const;
  BandSet& operator|=(const BandSet& o) { return *this = *this | o; }
  BandSet& operator&=(const BandSet& o) { return *this = *this & o; }
  BandSet& operator-=(const BandSet& o) { return *this = *this - o; }

  friend bool operator==(const BandSet&, const BandSet&) = default;

  /// "[lo,hi) [lo,hi)" in Hz, or "{}" when empty.
  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<BandInterval> ivs_;
};

/// Channel grid: channel k covers [k*width, (k+1)*width).
struct ChannelGrid {
  Hz width = 180'000;

  BandInterval channel(std::int64_t k) const { return {k * width, (k + 1) * width}; }
  bool aligned(Hz f) const { return f % width == 0; }
  bool aligned(const BandSet& s) const;
  /// Indices of every channel fully inside `s`, ascending.
  std::vector<std::int64_t> channels_in(const BandSet& s) const;
  BandSet to_band(const std::vector<std::int64_t>& channels) const;
  std::int64_t count(const BandSet& s) const { return s.measure() / width; }

  friend bool operator==(const ChannelGrid&, const ChannelGrid&) = default;
};

}  // namespace ffr
