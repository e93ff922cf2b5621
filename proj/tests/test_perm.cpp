#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "av321/perm.hpp"

using namespace av321;

namespace {

// Brute-force containment: try every index subset of the pattern's length.
bool brute_contains(const std::vector<int> &v, const std::vector<int> &pat) {
  const int n = static_cast<int>(v.size());
  const int k = static_cast<int>(pat.size());
  if (k > n) return false;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> sub;
    for (int i = 0; i < n; ++i) {
      if (pick[i]) sub.push_back(v[i]);
    }
    bool iso = true;
    for (int a = 0; a < k && iso; ++a) {
      for (int b = 0; b < k && iso; ++b) {
        if ((sub[a] < sub[b]) != (pat[a] < pat[b])) iso = false;
      }
    }
    if (iso) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::vector<std::vector<int>> out;
  do out.push_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

const long kCatalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012};

} // namespace

TEST_CASE("permutation construction validates a bijection of 1..n") {
  CHECK(Permutation({1}).size() == 1);
  CHECK(Permutation({2, 3, 1})(1) == 2);
  CHECK_THROWS_AS(Permutation({}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
  CHECK(Permutation::identity(4) == Permutation({1, 2, 3, 4}));
}

TEST_CASE("parse and format round trip") {
  const Permutation p = parse_permutation("  2 3 1\t5 8 4 9 10 6 11 7\n");
  CHECK(format_permutation(p) == "2 3 1 5 8 4 9 10 6 11 7");
  CHECK_THROWS(parse_permutation("1 x 2"));
  CHECK_THROWS(parse_permutation(""));
  CHECK_THROWS(parse_permutation("1 3"));
}

TEST_CASE("fixed point measure invariants") {
  CHECK_THROWS(FixedPointMeasure({2, 2}));
  CHECK_THROWS(FixedPointMeasure({3, 1}));
  CHECK_THROWS(FixedPointMeasure({0}));
  const FixedPointMeasure m({1, 3, 70});
  CHECK(m.mass() == 3);
  CHECK(m.contains(3));
  CHECK_FALSE(m.contains(2));
  CHECK(m.window_mask(10) == 0b101u);
  CHECK(format_measure(m) == "1 3 70");
  CHECK(format_measure(FixedPointMeasure()) == "");
}

TEST_CASE("pattern containment examples") {
  const Permutation p321({3, 2, 1});
  CHECK(contains_pattern(Permutation({3, 2, 1}), p321));
  CHECK_FALSE(contains_pattern(Permutation({2, 3, 1}), p321));
  CHECK(contains_pattern(Permutation({4, 1, 3, 2}), p321));
  CHECK_FALSE(contains_pattern(Permutation({1}), p321));
  CHECK_THROWS_AS(contains_pattern(Permutation::identity(6), Permutation({1, 2, 3, 4, 5})),
                  std::invalid_argument);
}

TEST_CASE("linear 321 check and general search agree with brute force for n <= 8") {
  const Permutation p321({3, 2, 1});
  for (int n = 1; n <= 8; ++n) {
    for (const auto &v : all_perms(n)) {
      const bool brute = brute_contains(v, {3, 2, 1});
      REQUIRE(avoids_321(std::span<const int>(v)) == !brute);
      if (n <= 6) REQUIRE(contains_pattern(Permutation(v), p321) == brute);
    }
  }
}

TEST_CASE("pattern search agrees with brute force on all length 3 and 4 patterns for n <= 6") {
  std::vector<std::vector<int>> patterns = all_perms(3);
  for (const auto &q : all_perms(4)) patterns.push_back(q);
  for (int n = 1; n <= 6; ++n) {
    for (const auto &v : all_perms(n)) {
      const Permutation perm(v);
      for (const auto &pat : patterns) {
        REQUIRE(contains_pattern(perm, Permutation(pat)) == brute_contains(v, pat));
      }
    }
  }
}

TEST_CASE("enumeration equals the filtered symmetric group") {
  std::vector<std::vector<int>> patterns = all_perms(3);
  patterns.push_back({2, 4, 1, 3});
  patterns.push_back({1, 3, 2, 4});
  for (int n = 1; n <= 7; ++n) {
    const auto sn = all_perms(n);
    for (const auto &pat : patterns) {
      std::vector<Permutation> filtered;
      for (const auto &v : sn) {
        if (!brute_contains(v, pat)) filtered.emplace_back(v);
      }
      // Lexicographic order on both sides.
      REQUIRE(list_avoiders(n, Permutation(pat)) == filtered);
    }
  }
}

TEST_CASE("Catalan counts for every length 3 pattern") {
  for (const auto &pat : all_perms(3)) {
    for (int n = 1; n <= 10; ++n) {
      long count = 0;
      enumerate_avoiders(n, Permutation(pat), [&](const Permutation &) { ++count; });
      REQUIRE(count == kCatalan[n]);
    }
  }
  CHECK_THROWS(enumerate_avoiders(0, Permutation({3, 2, 1}), [](const Permutation &) {}));
  CHECK_THROWS(enumerate_avoiders(13, Permutation({3, 2, 1}), [](const Permutation &) {}));
  CHECK_THROWS(enumerate_avoiders(11, Permutation({1, 3, 2, 4}), [](const Permutation &) {}));
}

TEST_CASE("left-to-right maxima") {
  const auto m = left_to_right_maxima(parse_permutation("2 3 1 5 8 4 9 10 6 11 7"));
  CHECK(m.indices == std::vector<int>{1, 2, 4, 5, 7, 8, 10});
  CHECK(m.values == std::vector<int>{2, 3, 5, 8, 9, 10, 11});
  const auto id = left_to_right_maxima(Permutation::identity(3));
  CHECK(id.indices == std::vector<int>{1, 2, 3});
  for (int n = 1; n <= 7; ++n) {
    for (const auto &v : all_perms(n)) {
      const auto lr = left_to_right_maxima(Permutation(v));
      REQUIRE(lr.indices.front() == 1);
      REQUIRE(lr.values.back() == n);
      REQUIRE(std::is_sorted(lr.values.begin(), lr.values.end()));
      REQUIRE(std::adjacent_find(lr.values.begin(), lr.values.end()) == lr.values.end());
    }
  }
}

TEST_CASE("front and back measures partition the fixed points") {
  CHECK(fixed_points(Permutation({1, 3, 2, 4})) == FixedPointMeasure({1, 4}));
  const FrontBack fb = fixed_point_measures(Permutation({1, 3, 2, 4}));
  CHECK(fb.front == FixedPointMeasure({1}));
  CHECK(fb.back == FixedPointMeasure({1}));
  // Odd n: the middle position belongs to the back.
  const FrontBack mid = fixed_point_measures(Permutation({3, 2, 1}));
  CHECK(mid.front.empty());
  CHECK(mid.back == FixedPointMeasure({2}));

  for (int n = 1; n <= 9; ++n) {
    enumerate_avoiders(n, Permutation({3, 2, 1}), [&](const Permutation &perm) {
      const FrontBack parts = fixed_point_measures(perm);
      std::set<std::int64_t> joined;
      for (auto i : parts.front.positions()) {
        REQUIRE(i <= n / 2);
        joined.insert(i);
      }
      for (auto j : parts.back.positions()) {
        REQUIRE(n + 1 - j > n / 2);
        joined.insert(n + 1 - j);
      }
      const FixedPointMeasure fp = fixed_points(perm);
      const auto all = fp.positions();
      REQUIRE(std::vector<std::int64_t>(joined.begin(), joined.end()) ==
              std::vector<std::int64_t>(all.begin(), all.end()));
    });
  }
}
