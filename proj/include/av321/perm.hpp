#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace av321 {

/// One-line notation of a permutation of {1..n}. Positions and values are
/// 1-based; `(*this)(i)` is the value at position i.
class Permutation {
public:
  /// Validates that `values` is a bijection of {1..n}, n >= 1.
  /// Throws std::invalid_argument otherwise.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(values_.size()); }
  int operator()(int position) const { return values_[position - 1]; }
  std::span<const int> values() const { return values_; }

  bool operator==(const Permutation &) const = default;
  auto operator<=>(const Permutation &) const = default;

private:
  std::vector<int> values_;
};

Permutation validate_permutation(std::vector<int> values);

/// Parses "2 3 1 5" (whitespace separated, 1-based).
Permutation parse_permutation(std::string_view text);
std::string format_permutation(const Permutation &perm);
std::ostream &operator<<(std::ostream &os, const Permutation &perm);

/// Finite set of positive positions, each with mass one. Strictly increasing.
class FixedPointMeasure {
public:
  FixedPointMeasure() = default;
  explicit FixedPointMeasure(std::vector<std::int64_t> positions);

  std::span<const std::int64_t> positions() const { return positions_; }
  std::size_t mass() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }
  bool contains(std::int64_t position) const;

  /// Restriction to positions in [1, window] packed as a bitmask
  /// (bit i-1 set iff i is an atom). Requires window <= 63.
  std::uint64_t window_mask(int window) const;

  bool operator==(const FixedPointMeasure &) const = default;

private:
  std::vector<std::int64_t> positions_;
};

std::string format_measure(const FixedPointMeasure &m);

constexpr int kMaxPatternLength = 4;

/// True iff some subsequence of `perm` is order-isomorphic to `pattern`.
/// Throws std::invalid_argument for patterns longer than kMaxPatternLength.
bool contains_pattern(const Permutation &perm, const Permutation &pattern);

/// Linear-time check for the absence of a decreasing subsequence of length 3.
bool avoids_321(std::span<const int> values);
inline bool avoids_321(const Permutation &perm) { return avoids_321(perm.values()); }

FixedPointMeasure fixed_points(const Permutation &perm);

struct LeftToRightMaxima {
  std::vector<int> indices;
  std::vector<int> values;
};

LeftToRightMaxima left_to_right_maxima(const Permutation &perm);

struct FrontBack {
  FixedPointMeasure front;
  FixedPointMeasure back;
  bool operator==(const FrontBack &) const = default;
};

/// front = {i <= n/2 : perm(i) = i}; back = {n+1-i : i > n/2, perm(i) = i}.
FrontBack fixed_point_measures(const Permutation &perm);

/// Largest n accepted by enumerate_avoiders for patterns of length 3; other
/// pattern lengths are capped at 10.
constexpr int kMaxEnumerateLength = 12;

/// Calls `visit` once for every element of Av_n(pattern), in lexicographic
/// order. Generation backtracks on prefixes that already contain the pattern.
void enumerate_avoiders(int n, const Permutation &pattern,
                        const std::function<void(const Permutation &)> &visit);

std::vector<Permutation> list_avoiders(int n, const Permutation &pattern);

} // namespace av321
