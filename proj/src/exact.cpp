#include "av321/exact.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace av321 {

namespace {

void check_exact_length(int n) {
  if (n < 1 || n > kMaxExactLength) {
    throw std::invalid_argument("exact oracle: n=" + std::to_string(n) + " outside 1.." +
                                std::to_string(kMaxExactLength));
  }
}

} // namespace

ExactDist<int> exact_fp_distribution(int n, const Permutation &pattern) {
  check_exact_length(n);
  ExactDist<int> out;
  enumerate_avoiders(n, pattern, [&](const Permutation &perm) {
    out.add(static_cast<int>(fixed_points(perm).mass()));
  });
  return out;
}

ExactDist<std::pair<int, int>> exact_front_back_joint(int n) {
  check_exact_length(n);
  ExactDist<std::pair<int, int>> out;
  enumerate_avoiders(n, Permutation({3, 2, 1}), [&](const Permutation &perm) {
    const FrontBack fb = fixed_point_measures(perm);
    out.add({static_cast<int>(fb.front.mass()), static_cast<int>(fb.back.mass())});
  });
  return out;
}

Rational exact_fixed_at_one(int n) {
  std::int64_t hits = 0, total = 0;
  enumerate_avoiders(n, Permutation({3, 2, 1}), [&](const Permutation &perm) {
    ++total;
    if (perm(1) == 1) ++hits;
  });
  return Rational(hits, total);
}

double exact_midrange_probability(int n, int a, int b) {
  if (!(1 <= a && a <= b && b <= n)) {
    throw std::invalid_argument("exact_midrange_probability: need 1 <= a <= b <= n");
  }
  // w[m] = C_m / 4^(m+1): weight of a primitive excursion with m+1 up steps,
  // scaled so the running sums stay O(1).
  std::vector<double> w(static_cast<std::size_t>(n));
  w[0] = 0.25;
  for (int m = 1; m < n; ++m) w[m] = w[m - 1] * (2.0 * m - 1.0) / (2.0 * (m + 1));
  // all[t], miss[t]: scaled counts of Dyck paths of semilength t, without
  // restriction and avoiding a height-1 peak whose up-step index is in [a, b].
  std::vector<double> all(static_cast<std::size_t>(n) + 1, 0.0), miss(all);
  all[0] = miss[0] = 1.0;
  for (int t = 1; t <= n; ++t) {
    double sa = 0.0, sm = 0.0;
    for (int size = 1; size <= t; ++size) {
      sa += all[t - size] * w[size - 1];
      if (size == 1 && a <= t && t <= b) continue;
      sm += miss[t - size] * w[size - 1];
    }
    all[t] = sa;
    miss[t] = sm;
  }
  return 1.0 - miss[n] / all[n];
}

Pmf to_pmf(const ExactDist<int> &dist) {
  if (dist.counts.empty()) return Pmf();
  std::vector<double> table(static_cast<std::size_t>(dist.counts.rbegin()->first) + 1, 0.0);
  for (const auto &[k, count] : dist.counts) {
    table[k] = static_cast<double>(count) / static_cast<double>(dist.total);
  }
  return Pmf(std::move(table), {}, "exact");
}

} // namespace av321
