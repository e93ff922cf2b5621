#include "av321/samplers.hpp"

#include <algorithm>
#include <stdexcept>

#include "av321/bijection.hpp"

namespace av321 {

namespace {

constexpr std::size_t kProgenyTable = 4096;

const Pmf &progeny_table() {
  static const Pmf table = progeny_pmf(kProgenyTable);
  return table;
}

const Pmf &size_biased_table() {
  static const Pmf table = size_biased_geom_half_pmf(64);
  return table;
}

// Appends, in preorder, the out-degrees of a Geometric(1/2) Galton-Watson
// tree whose vertices at relative depth `max_depth` are cut.
void append_gw_half(std::vector<std::uint32_t> &degrees, std::uint32_t max_depth, RngStream &rng) {
  struct Frame {
    std::uint64_t remaining;
    std::uint32_t child_depth;
  };
  auto draw = [&](std::uint32_t depth) -> std::uint32_t {
    return depth < max_depth ? static_cast<std::uint32_t>(rng.geometric_half()) : 0;
  };
  std::vector<Frame> stack;
  const std::uint32_t root = draw(0);
  degrees.push_back(root);
  if (root > 0) stack.push_back({root, 1});
  while (!stack.empty()) {
    Frame &top = stack.back();
    if (top.remaining == 0) {
      stack.pop_back();
      continue;
    }
    --top.remaining;
    const std::uint32_t depth = top.child_depth;
    const std::uint32_t d = draw(depth);
    degrees.push_back(d);
    if (d > 0) stack.push_back({d, depth + 1});
  }
}

} // namespace

DyckPath uniform_dyck(std::size_t n, RngStream &rng) {
  const std::size_t len = 2 * n + 1;
  std::vector<char> steps(len, 'D');
  std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(n), 'U');
  for (std::size_t i = len - 1; i > 0; --i) {
    std::swap(steps[i], steps[rng.below(i + 1)]);
  }
  // First index at which the walk reaches its minimum.
  long height = 0, lowest = 0;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < len; ++i) {
    height += steps[i] == 'U' ? 1 : -1;
    if (height < lowest) {
      lowest = height;
      argmin = i;
    }
  }
  std::string word;
  word.reserve(2 * n);
  for (std::size_t j = 1; j < len; ++j) word.push_back(steps[(argmin + j) % len]);
  return DyckPath(std::move(word));
}

PlaneTree uniform_tree(std::size_t vertices, RngStream &rng) {
  if (vertices < 1) throw std::invalid_argument("uniform_tree: need at least one vertex");
  return tree_from_dyck(uniform_dyck(vertices - 1, rng));
}

Permutation uniform_avoider_321(int n, RngStream &rng) {
  if (n < 1) throw std::invalid_argument("uniform_avoider_321: n must be >= 1");
  return tree_to_perm(uniform_tree(static_cast<std::size_t>(n) + 1, rng));
}

GwOutcome gw_tree_truncated(const Pmf &offspring, std::optional<std::uint32_t> height,
                            RngStream &rng, std::size_t node_cap) {
  double mean = 0.0;
  for (std::size_t k = 0; k < offspring.table_size(); ++k) mean += static_cast<double>(k) * offspring.at(static_cast<std::int64_t>(k));
  if (mean > 1.0 + 1e-9) throw std::invalid_argument("gw_tree_truncated: offspring mean exceeds 1");
  if (node_cap < 1) throw std::invalid_argument("gw_tree_truncated: node_cap must be >= 1");

  // Breadth-first out-degrees; the children of BFS vertex i occupy a
  // contiguous block later in the same order.
  std::vector<std::uint32_t> bfs{0};
  std::size_t level_begin = 0, level_end = 1;
  std::uint32_t depth = 0;
  GwOutcome out;
  while (level_begin < level_end && (!height || depth < *height)) {
    for (std::size_t v = level_begin; v < level_end; ++v) {
      const auto d = offspring.sample(rng);
      bfs[v] = static_cast<std::uint32_t>(d);
      if (bfs.size() + static_cast<std::size_t>(d) > node_cap) {
        out.vertices_generated = bfs.size() + static_cast<std::size_t>(d);
        return out;
      }
      bfs.resize(bfs.size() + static_cast<std::size_t>(d), 0);
    }
    level_begin = level_end;
    level_end = bfs.size();
    ++depth;
  }
  out.vertices_generated = bfs.size();

  std::vector<std::size_t> first_child(bfs.size());
  std::size_t next = 1;
  for (std::size_t v = 0; v < bfs.size(); ++v) {
    first_child[v] = next;
    next += bfs[v];
  }
  std::vector<std::uint32_t> preorder;
  preorder.reserve(bfs.size());
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    preorder.push_back(bfs[v]);
    for (std::size_t c = bfs[v]; c-- > 0;) stack.push_back(first_child[v] + c);
  }
  out.tree = PlaneTree(std::move(preorder));
  return out;
}

std::optional<std::int64_t> gw_total_progeny(const Pmf &offspring, RngStream &rng,
                                             std::size_t node_cap) {
  std::int64_t pending = 1;
  std::int64_t size = 0;
  const auto cap = static_cast<std::int64_t>(node_cap);
  while (pending > 0) {
    --pending;
    ++size;
    pending += offspring.sample(rng);
    if (size + pending > cap) return std::nullopt;
  }
  return size;
}

KestenSample kesten_truncated(std::uint32_t height, RngStream &rng) {
  std::vector<std::uint32_t> degrees;
  std::vector<std::size_t> spine;
  const Pmf &biased = size_biased_table();

  // Depth-first, so bushes left of the spine child precede it in preorder.
  auto emit_spine = [&](auto &&self, std::uint32_t level) -> void {
    spine.push_back(degrees.size());
    if (level == height) {
      degrees.push_back(0);
      return;
    }
    const auto width = static_cast<std::uint32_t>(biased.sample(rng));
    const auto spine_child = static_cast<std::uint32_t>(rng.below(width));
    degrees.push_back(width);
    const std::uint32_t bush_depth = height - level - 1;
    for (std::uint32_t c = 0; c < width; ++c) {
      if (c == spine_child) {
        self(self, level + 1);
      } else {
        append_gw_half(degrees, bush_depth, rng);
      }
    }
  };
  emit_spine(emit_spine, 0);
  return {PlaneTree(std::move(degrees)), std::move(spine)};
}

std::int64_t sample_progeny(RngStream &rng) {
  const double u = rng.uniform();
  const Pmf &table = progeny_table();
  if (const std::int64_t k = table.table_quantile(u); k >= 0) return k;

  // Smallest k with P(#T > k) = progeny_survival(k + 1) < 1 - u.
  const double v = 1.0 - u;
  // Draws past 2^62 (probability below 1e-9) saturate.
  constexpr std::int64_t kSaturate = std::int64_t{1} << 62;
  std::int64_t lo = static_cast<std::int64_t>(kProgenyTable) - 1;
  std::int64_t hi = lo + 1;
  while (progeny_survival(hi + 1) >= v) {
    if (hi >= kSaturate) return kSaturate;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (progeny_survival(mid + 1) < v) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

LimitProcessSample sample_limit_process(RngStream &rng) {
  LimitProcessSample s;
  auto side = [&rng](std::int64_t &count, std::vector<std::int64_t> &draws) {
    count = static_cast<std::int64_t>(rng.geometric_half());
    draws.reserve(static_cast<std::size_t>(count));
    std::vector<std::int64_t> atoms;
    std::int64_t position = 0;
    for (std::int64_t k = 0; k < count; ++k) {
      const std::int64_t x = sample_progeny(rng);
      draws.push_back(x);
      position += x;
      if (x == 1) atoms.push_back(position);
    }
    return FixedPointMeasure(std::move(atoms));
  };
  s.front = side(s.N, s.X);
  s.back = side(s.M, s.Y);
  return s;
}

} // namespace av321
