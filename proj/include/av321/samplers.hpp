#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "av321/perm.hpp"
#include "av321/pmf.hpp"
#include "av321/rng.hpp"
#include "av321/tree.hpp"

namespace av321 {

/// Uniform Dyck path of semilength n via the cycle lemma: shuffle n up and
/// n+1 down steps, rotate to start just after the first global minimum of
/// the walk, drop the final down step.
DyckPath uniform_dyck(std::size_t n, RngStream &rng);

/// Uniform plane tree with `vertices` vertices (>= 1).
PlaneTree uniform_tree(std::size_t vertices, RngStream &rng);

/// Uniform element of Av_n(321), n >= 1: tree_to_perm of a uniform tree on
/// n+1 vertices.
Permutation uniform_avoider_321(int n, RngStream &rng);

constexpr std::size_t kDefaultNodeCap = 10'000'000;

struct GwOutcome {
  /// Empty when generation exceeded node_cap.
  std::optional<PlaneTree> tree;
  std::size_t vertices_generated = 0;
  bool overflowed() const { return !tree.has_value(); }
};

/// Galton-Watson tree grown level by level. Vertices at depth `height`
/// receive no children; with no height, growth stops at extinction or when
/// more than node_cap vertices exist (reported as overflow, never truncated).
/// Throws std::invalid_argument if the offspring table mean exceeds 1 + 1e-9.
GwOutcome gw_tree_truncated(const Pmf &offspring, std::optional<std::uint32_t> height,
                            RngStream &rng, std::size_t node_cap = kDefaultNodeCap);

/// Total progeny of an unbounded Galton-Watson tree without materializing
/// it; nullopt on overflow.
std::optional<std::int64_t> gw_total_progeny(const Pmf &offspring, RngStream &rng,
                                             std::size_t node_cap = kDefaultNodeCap);

struct KestenSample {
  PlaneTree tree;
  /// Preorder indices root, then one vertex per level down to `height`.
  std::vector<std::size_t> spine;
};

/// Size-biased Geometric(1/2) Galton-Watson tree truncated at `height`.
/// Each spine vertex above the cutoff gets a size-biased number of children;
/// the spine continues at a uniform one and the rest carry independent
/// Geometric(1/2) trees.
KestenSample kesten_truncated(std::uint32_t height, RngStream &rng);

/// Total progeny draw for the Geometric(1/2) tree: P(k) = C_{k-1} / 2^{2k-1}.
/// Inverse CDF over a 4096-atom table, then inversion of the exact survival
/// function binom(2k,k)/4^k beyond it.
std::int64_t sample_progeny(RngStream &rng);

struct LimitProcessSample {
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::vector<std::int64_t> X;
  std::vector<std::int64_t> Y;
  FixedPointMeasure front;
  FixedPointMeasure back;
};

/// One draw of the limiting pair of fixed-point measures: N, M ~
/// Geometric(1/2) on {0,1,...}, X_i, Y_i i.i.d. progeny draws, atoms at the
/// partial sums whose last increment equals 1.
LimitProcessSample sample_limit_process(RngStream &rng);

} // namespace av321
