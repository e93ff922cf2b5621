#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "av321/perm.hpp"

namespace av321 {

/// Balanced word over {U, D}: every prefix has at least as many U as D.
class DyckPath {
public:
  DyckPath() = default;
  /// Throws std::invalid_argument on characters other than 'U'/'D',
  /// a prefix dipping below zero, or an unbalanced total.
  explicit DyckPath(std::string steps);

  const std::string &steps() const { return steps_; }
  std::size_t semilength() const { return steps_.size() / 2; }

  /// Peaks "UD" whose top sits at height 1.
  int height_one_peaks() const;

  bool operator==(const DyckPath &) const = default;

private:
  std::string steps_;
};

/// Finite rooted plane tree. Vertices are preorder indices 0..size()-1 with
/// the root at 0; the tree is stored as its preorder out-degree sequence.
class PlaneTree {
public:
  /// Single vertex.
  PlaneTree();
  /// Builds from a preorder out-degree sequence. Throws std::invalid_argument
  /// unless the sequence describes exactly one tree.
  explicit PlaneTree(std::vector<std::uint32_t> preorder_degrees);

  std::size_t size() const { return degree_.size(); }
  std::uint32_t degree(std::size_t v) const { return degree_[v]; }
  std::span<const std::uint32_t> degrees() const { return degree_; }

  /// Parent of v; the root returns size().
  std::size_t parent(std::size_t v) const { return parent_[v]; }
  std::uint32_t depth(std::size_t v) const { return depth_[v]; }
  std::size_t subtree_size(std::size_t v) const { return subtree_[v]; }
  std::span<const std::size_t> children(std::size_t v) const {
    return {child_list_.data() + child_offset_[v], degree_[v]};
  }
  bool is_leaf(std::size_t v) const { return degree_[v] == 0; }
  std::uint32_t height() const;

  bool operator==(const PlaneTree &o) const { return degree_ == o.degree_; }

private:
  std::vector<std::uint32_t> degree_;
  std::vector<std::size_t> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::size_t> subtree_;
  std::vector<std::size_t> child_offset_;
  std::vector<std::size_t> child_list_;
};

PlaneTree tree_from_dyck(const DyckPath &path);
DyckPath dyck_from_tree(const PlaneTree &tree);

/// Tree text format: Dyck word over "U"/"D", root implicit.
PlaneTree parse_tree(std::string_view word);
std::string format_tree(const PlaneTree &tree);

/// Leaf data feeding the tree -> permutation map. Leaves are taken in
/// preorder; s[i] counts vertices strictly before leaf i in preorder and
/// p[i] is its depth.
struct LeafStats {
  std::vector<std::size_t> leaves;
  std::vector<int> s;
  std::vector<int> p;

  std::size_t k() const { return leaves.size(); }
  /// s_i - p_i + 1, the position a leaf is sent to.
  int b(std::size_t i) const { return s[i] - p[i] + 1; }
};

/// Throws std::invalid_argument for the single-vertex tree.
LeafStats leaf_stats(const PlaneTree &tree);

/// Subtree of vertices at depth <= max_depth.
PlaneTree truncate_tree(const PlaneTree &tree, std::uint32_t max_depth);

struct FringeEntry {
  std::size_t size;
  bool single_vertex;
  bool operator==(const FringeEntry &) const = default;
};

/// One entry per child of the root, in order. Rejects the single-vertex tree.
std::vector<FringeEntry> fringe_decomposition(const PlaneTree &tree);

/// Fixed-point measures of tree_to_perm(tree) read off the root's fringe
/// subtrees, split at the first child whose prefix size exceeds n/2.
FrontBack tree_fixed_point_measures(const PlaneTree &tree);

constexpr std::size_t kMaxEnumerateVertices = 10;

/// Visits each plane tree with `vertices` vertices once, ordered by Dyck word
/// with U < D.
void enumerate_trees(std::size_t vertices, const std::function<void(const PlaneTree &)> &visit);

} // namespace av321
