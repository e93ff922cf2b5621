#include "av321/bijection.hpp"

#include <stdexcept>

namespace av321 {

Permutation tree_to_perm(const PlaneTree &tree) {
  const LeafStats stats = leaf_stats(tree);
  const int n = static_cast<int>(tree.size()) - 1;

  std::vector<int> values(static_cast<std::size_t>(n), 0);
  std::vector<bool> value_taken(static_cast<std::size_t>(n) + 1, false);
  for (std::size_t i = 0; i < stats.k(); ++i) {
    values[stats.b(i) - 1] = stats.s[i];
    value_taken[stats.s[i]] = true;
  }
  int next = 1;
  for (int pos = 0; pos < n; ++pos) {
    if (values[pos] != 0) continue;
    while (value_taken[next]) ++next;
    values[pos] = next++;
  }
  return Permutation(std::move(values));
}

PlaneTree perm_to_tree(const Permutation &perm) {
  if (!avoids_321(perm)) {
    throw std::invalid_argument("perm_to_tree: permutation contains 321: " + format_permutation(perm));
  }
  const LeftToRightMaxima maxima = left_to_right_maxima(perm);
  const int n = perm.size();

  std::string steps;
  steps.reserve(2 * static_cast<std::size_t>(n));
  int height = 0;
  int prev_s = 0;
  for (std::size_t i = 0; i < maxima.indices.size(); ++i) {
    const int s = maxima.values[i];
    const int p = s - maxima.indices[i] + 1;
    // New vertices between consecutive leaves: s - prev_s, all on the ascent.
    const int valley = p - (s - prev_s);
    if (valley < 0 || (i > 0 && valley >= height) || (i == 0 && valley != 0)) {
      throw std::invalid_argument("perm_to_tree: inconsistent leaf data for " +
                                  format_permutation(perm));
    }
    steps.append(static_cast<std::size_t>(height - valley), 'D');
    steps.append(static_cast<std::size_t>(p - valley), 'U');
    height = p;
    prev_s = s;
  }
  if (prev_s != n) throw std::invalid_argument("perm_to_tree: last leaf is not vertex n");
  steps.append(static_cast<std::size_t>(height), 'D');
  return tree_from_dyck(DyckPath(std::move(steps)));
}

} // namespace av321
