#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "av321/pmf.hpp"

namespace av321 {

/// Counts of observed outcomes. Merging is associative and commutative so
/// per-worker tallies can be reduced in any order.
template <typename Key>
class Tally {
public:
  void add(const Key &key, std::uint64_t count = 1) {
    counts_[key] += count;
    total_ += count;
  }

  void merge(const Tally &other) {
    for (const auto &[key, count] : other.counts_) counts_[key] += count;
    total_ += other.total_;
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t count(const Key &key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }
  double frequency(const Key &key) const {
    return total_ == 0 ? 0.0 : static_cast<double>(count(key)) / static_cast<double>(total_);
  }
  const std::map<Key, std::uint64_t> &counts() const { return counts_; }

  bool operator==(const Tally &) const = default;

private:
  std::map<Key, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

using EmpiricalDist = Tally<std::int64_t>;
using JointEmpirical = Tally<std::pair<std::int64_t, std::int64_t>>;

/// Half the l1 distance over the union support. Pmf tails beyond the
/// compared range are folded into one final bucket.
double tv_distance(const Pmf &a, const Pmf &b);
double tv_distance(const EmpiricalDist &a, const Pmf &b);
inline double tv_distance(const Pmf &a, const EmpiricalDist &b) { return tv_distance(b, a); }

template <typename Key>
double tv_distance(const Tally<Key> &a, const Tally<Key> &b) {
  std::set<Key> keys;
  for (const auto &kv : a.counts()) keys.insert(kv.first);
  for (const auto &kv : b.counts()) keys.insert(kv.first);
  double acc = 0.0;
  for (const Key &k : keys) acc += std::abs(a.frequency(k) - b.frequency(k));
  return acc / 2.0;
}

/// TV restricted to outcomes in [lo, hi]; everything outside the window is
/// one extra bucket.
double tv_distance_window(const EmpiricalDist &a, const Pmf &b, std::int64_t lo, std::int64_t hi);
double tv_distance_window(const EmpiricalDist &a, const EmpiricalDist &b, std::int64_t lo,
                          std::int64_t hi);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees = 0;
  double p_value = 1.0;
  /// Lower edge of each merged row/column category; the last category
  /// absorbs every larger outcome.
  std::vector<std::int64_t> row_edges;
  std::vector<std::int64_t> col_edges;
};

/// Pearson test of independence against the product of the marginals.
/// Trailing rows/columns are merged until every expected count reaches
/// `bin_floor`. Throws std::invalid_argument if fewer than two rows or two
/// columns remain.
ChiSquareResult chi_square_independence(const JointEmpirical &joint, double bin_floor = 5.0);

} // namespace av321
