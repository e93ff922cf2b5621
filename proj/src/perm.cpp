#include "av321/perm.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace av321 {

namespace {

// Subsequence search with pruning. Fills pattern slots 0..k-1 left to right;
// a candidate index is accepted only if its value is ordered against every
// earlier chosen value the same way as in the pattern. When `last` is
// nonnegative, slot k-1 is pinned to index `last` and the other slots range
// over [0, last).
class PatternSearch {
public:
  PatternSearch(std::span<const int> text, std::span<const int> pattern)
      : text_(text), pattern_(pattern) {}

  bool any() { return extend(0, 0, static_cast<int>(text_.size())); }

  bool ending_at(int last) {
    const int k = static_cast<int>(pattern_.size());
    if (last + 1 < k) return false;
    pinned_ = last;
    return extend(0, 0, last);
  }

private:
  bool compatible(int slot, int value) const {
    for (int s = 0; s < slot; ++s) {
      if ((value < chosen_[s]) != (pattern_[slot] < pattern_[s])) return false;
    }
    return true;
  }

  bool extend(int slot, int from, int end) {
    const int k = static_cast<int>(pattern_.size());
    if (slot == k) return true;
    if (slot >= kMaxPatternLength) return false;
    if (pinned_ >= 0 && slot == k - 1) {
      const int value = text_[pinned_];
      return compatible(slot, value);
    }
    const int remaining = (pinned_ >= 0 ? k - 1 : k) - slot;
    for (int j = from; j + remaining <= end; ++j) {
      const int value = text_[j];
      if (!compatible(slot, value)) continue;
      chosen_[slot] = value;
      if (extend(slot + 1, j + 1, end)) return true;
    }
    return false;
  }

  std::span<const int> text_;
  std::span<const int> pattern_;
  int chosen_[kMaxPatternLength] = {};
  int pinned_ = -1;
};

void check_pattern_length(const Permutation &pattern) {
  if (pattern.size() > kMaxPatternLength) {
    throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) +
                                " exceeds supported maximum " +
                                std::to_string(kMaxPatternLength));
  }
}

} // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const auto n = values_.size();
  if (n == 0) throw std::invalid_argument("permutation must be nonempty");
  std::vector<bool> seen(n + 1, false);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw std::invalid_argument("permutation value " + std::to_string(v) +
                                  " outside 1.." + std::to_string(n));
    }
    if (seen[v]) throw std::invalid_argument("duplicate permutation value " + std::to_string(v));
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return Permutation(std::move(v));
}

Permutation validate_permutation(std::vector<int> values) {
  return Permutation(std::move(values));
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                               text[i] == '\n')) {
      ++i;
    }
    if (i == text.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc() || ptr == text.data() + i) {
      throw std::invalid_argument("malformed permutation text: '" + std::string(text) + "'");
    }
    values.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
    if (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
        text[i] != '\n') {
      throw std::invalid_argument("malformed permutation text: '" + std::string(text) + "'");
    }
  }
  return Permutation(std::move(values));
}

std::string format_permutation(const Permutation &perm) {
  std::string out;
  for (int i = 1; i <= perm.size(); ++i) {
    if (i > 1) out += ' ';
    out += std::to_string(perm(i));
  }
  return out;
}

std::ostream &operator<<(std::ostream &os, const Permutation &perm) {
  return os << format_permutation(perm);
}

FixedPointMeasure::FixedPointMeasure(std::vector<std::int64_t> positions)
    : positions_(std::move(positions)) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] < 1) throw std::invalid_argument("measure atoms must be positive");
    if (i > 0 && positions_[i] <= positions_[i - 1]) {
      throw std::invalid_argument("measure atoms must be strictly increasing");
    }
  }
}

bool FixedPointMeasure::contains(std::int64_t position) const {
  return std::binary_search(positions_.begin(), positions_.end(), position);
}

std::uint64_t FixedPointMeasure::window_mask(int window) const {
  if (window > 63) throw std::invalid_argument("window_mask supports windows up to 63");
  std::uint64_t mask = 0;
  for (std::int64_t p : positions_) {
    if (p > window) break;
    mask |= std::uint64_t{1} << (p - 1);
  }
  return mask;
}

std::string format_measure(const FixedPointMeasure &m) {
  std::string out;
  for (std::size_t i = 0; i < m.positions().size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(m.positions()[i]);
  }
  return out;
}

bool contains_pattern(const Permutation &perm, const Permutation &pattern) {
  check_pattern_length(pattern);
  if (pattern.size() > perm.size()) return false;
  return PatternSearch(perm.values(), pattern.values()).any();
}

bool avoids_321(std::span<const int> values) {
  // 321-avoiding iff the entries that are not left-to-right maxima increase.
  int running_max = 0;
  int last_non_max = 0;
  for (int v : values) {
    if (v > running_max) {
      running_max = v;
    } else {
      if (v < last_non_max) return false;
      last_non_max = v;
    }
  }
  return true;
}

FixedPointMeasure fixed_points(const Permutation &perm) {
  std::vector<std::int64_t> out;
  for (int i = 1; i <= perm.size(); ++i) {
    if (perm(i) == i) out.push_back(i);
  }
  return FixedPointMeasure(std::move(out));
}

LeftToRightMaxima left_to_right_maxima(const Permutation &perm) {
  LeftToRightMaxima out;
  int running_max = 0;
  for (int i = 1; i <= perm.size(); ++i) {
    if (perm(i) > running_max) {
      running_max = perm(i);
      out.indices.push_back(i);
      out.values.push_back(running_max);
    }
  }
  return out;
}

FrontBack fixed_point_measures(const Permutation &perm) {
  const int n = perm.size();
  const int half = n / 2;
  std::vector<std::int64_t> front, back;
  for (int i = 1; i <= half; ++i) {
    if (perm(i) == i) front.push_back(i);
  }
  for (int i = n; i > half; --i) {
    if (perm(i) == i) back.push_back(n + 1 - i);
  }
  return {FixedPointMeasure(std::move(front)), FixedPointMeasure(std::move(back))};
}

void enumerate_avoiders(int n, const Permutation &pattern,
                        const std::function<void(const Permutation &)> &visit) {
  check_pattern_length(pattern);
  const int limit = pattern.size() == 3 ? kMaxEnumerateLength : 10;
  if (n < 1 || n > limit) {
    throw std::invalid_argument("enumerate_avoiders: n=" + std::to_string(n) +
                                " outside 1.." + std::to_string(limit));
  }
  std::vector<int> prefix(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);

  std::function<void(int)> place = [&](int pos) {
    if (pos == n) {
      visit(Permutation(prefix));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      prefix[pos] = v;
      if (PatternSearch(std::span<const int>(prefix.data(), pos + 1), pattern.values())
              .ending_at(pos)) {
        continue;
      }
      used[v] = true;
      place(pos + 1);
      used[v] = false;
    }
  };
  place(0);
}

std::vector<Permutation> list_avoiders(int n, const Permutation &pattern) {
  std::vector<Permutation> out;
  enumerate_avoiders(n, pattern, [&](const Permutation &p) { out.push_back(p); });
  return out;
}

} // namespace av321
