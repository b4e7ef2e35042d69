#include "ffr/band.hpp"

#include <algorithm>
#include <cassert>

namespace ffr {

BandSet::BandSet(BandInterval iv) {
  if (!iv.empty()) ivs_.push_back(iv);
}

BandSet::BandSet(std::initializer_list<BandInterval> ivs) : ivs_(ivs) {
  canonicalize();
}

BandSet BandSet::from_intervals(std::vector<BandInterval> ivs) {
  BandSet s;
  s.ivs_ = std::move(ivs);
  s.canonicalize();
  return s;
}

void BandSet::canonicalize() {
  std::erase_if(ivs_, [](const BandInterval& iv) { return iv.empty(); });
  std::sort(ivs_.begin(), ivs_.end(),
            [](const BandInterval& a, const BandInterval& b) { return a.lo < b.lo; });
  std::vector<BandInterval> out;
  out.reserve(ivs_.size());
  for (const auto& iv : ivs_) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  ivs_ = std::move(out);
}

Hz BandSet::measure() const {
  Hz m = 0;
  for (const auto& iv : ivs_) m += iv.width();
  return m;
}

bool BandSet::contains(Hz f) const {
  auto it = std::upper_bound(ivs_.begin(), ivs_.end(), f,
                             [](Hz v, const BandInterval& iv) { return v < iv.lo; });
  if (it == ivs_.begin()) return false;
  return std::prev(it)->contains(f);
}

bool BandSet::contains(const BandInterval& iv) const {
  if (iv.empty()) return true;
  for (const auto& own : ivs_) {
    if (own.lo <= iv.lo && iv.hi <= own.hi) return true;
  }
  return false;
}

bool BandSet::intersects(const BandSet& other) const { return !(*this & other).empty(); }

bool BandSet::is_subset_of(const BandSet& other) const { return (*this - other).empty(); }

Hz BandSet::lowest() const {
  assert(!ivs_.empty());
  return ivs_.front().lo;
}

Hz BandSet::highest() const {
  assert(!ivs_.empty());
  return ivs_.back().hi;
}

BandSet BandSet::operator|(const BandSet& o) const {
  std::vector<BandInterval> all = ivs_;
  all.insert(all.end(), o.ivs_.begin(), o.ivs_.end());
  return from_intervals(std::move(all));
}

BandSet BandSet::operator&(const BandSet& o) const {
  BandSet out;
  std::size_t i = 0, j = 0;
  while (i < ivs_.size() && j < o.ivs_.size()) {
    const Hz lo = std::max(ivs_[i].lo, o.ivs_[j].lo);
    const Hz hi = std::min(ivs_[i].hi, o.ivs_[j].hi);
    if (lo < hi) out.ivs_.push_back({lo, hi});
    if (ivs_[i].hi < o.ivs_[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces come out sorted and disjoint, but touching pieces must merge.
  out.canonicalize();
  return out;
}

BandSet BandSet::operator-(const BandSet& o) const {
  BandSet out;
  std::size_t j = 0;
  for (BandInterval cur : ivs_) {
    while (j < o.ivs_.size() && o.ivs_[j].hi <= cur.lo) ++j;
    std::size_t k = j;
    while (k < o.ivs_.size() && o.ivs_[k].lo < cur.hi) {
      if (o.ivs_[k].lo > cur.lo) out.ivs_.push_back({cur.lo, o.ivs_[k].lo});
      cur.lo = std::max(cur.lo, o.ivs_[k].hi);
      if (cur.lo >= cur.hi) break;
      ++k;
    }
    if (cur.lo < cur.hi) out.ivs_.push_back(cur);
  }
  out.canonicalize();
  return out;
}

std::string BandSet::to_string() const {
  if (ivs_.empty()) return "{}";
  std::string s;
  for (const auto& iv : ivs_) {
    if (!s.empty()) s += ' ';
    s += '[' + std::to_string(iv.lo) + ',' + std::to_string(iv.hi) + ')';
  }
  return s;
}

bool ChannelGrid::aligned(const BandSet& s) const {
  return std::all_of(s.intervals().begin(), s.intervals().end(),
                     [&](const BandInterval& iv) { return aligned(iv.lo) && aligned(iv.hi); });
}

std::vector<std::int64_t> ChannelGrid::channels_in(const BandSet& s) const {
  std::vector<std::int64_t> out;
  for (const auto& iv : s.intervals()) {
    const std::int64_t first = (iv.lo + width - 1) / width;
    const std::int64_t last = iv.hi / width;  // exclusive
    for (std::int64_t k = first; k < last; ++k) out.push_back(k);
  }
  return out;
}

BandSet ChannelGrid::to_band(const std::vector<std::int64_t>& channels) const {
  std::vector<BandInterval> ivs;
  ivs.reserve(channels.size());
  for (auto k : channels) ivs.push_back(channel(k));
  return BandSet::from_intervals(std::move(ivs));
}

}  // namespace ffr
