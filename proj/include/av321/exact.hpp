#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include <boost/rational.hpp>

#include "av321/perm.hpp"
#include "av321/pmf.hpp"

namespace av321 {

using Rational = boost::rational<std::int64_t>;

/// Exact finite distribution as integer counts over a finite population.
template <typename Key>
struct ExactDist {
  std::map<Key, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const Key &key) {
    ++counts[key];
    ++total;
  }
  Rational probability(const Key &key) const {
    auto it = counts.find(key);
    if (it == counts.end() || total == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(it->second), static_cast<std::int64_t>(total));
  }
  /// Equality as probability laws (counts may differ by a common factor).
  bool same_law(const ExactDist &o) const {
    if (counts.size() != o.counts.size()) return false;
    for (const auto &[key, count] : counts) {
      if (probability(key) != o.probability(key)) return false;
    }
    return true;
  }
};

constexpr int kMaxExactLength = 10;

/// Law of #{i : perm(i) = i} over Av_n(pattern), n <= kMaxExactLength.
ExactDist<int> exact_fp_distribution(int n, const Permutation &pattern);

/// Joint law of (front count, back count) over Av_n(321).
ExactDist<std::pair<int, int>> exact_front_back_joint(int n);

/// P(perm(1) = 1) over Av_n(321), by enumeration (n <= kMaxEnumerateLength).
Rational exact_fixed_at_one(int n);

/// P(some i in [a, b] has perm(i) = i) over Av_n(321), computed without
/// enumeration. Fixed points are the height-1 peaks of the Dyck path, so the
/// count runs over first-return compositions with Catalan-weighted parts.
/// O(n^2) in double precision; intended for n up to a few thousand.
double exact_midrange_probability(int n, int a, int b);

/// Dense double-precision Pmf over 0..max outcome.
Pmf to_pmf(const ExactDist<int> &dist);

} // namespace av321
