#include "av321/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace av321 {

DyckPath::DyckPath(std::string steps) : steps_(std::move(steps)) {
  long height = 0;
  for (char c : steps_) {
    if (c == 'U') {
      ++height;
    } else if (c == 'D') {
      if (--height < 0) throw std::invalid_argument("Dyck word dips below zero: " + steps_);
    } else {
      throw std::invalid_argument(std::string("Dyck word has invalid step '") + c + "'");
    }
  }
  if (height != 0) throw std::invalid_argument("Dyck word is unbalanced: " + steps_);
}

int DyckPath::height_one_peaks() const {
  int peaks = 0;
  int height = 0;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    height += steps_[i] == 'U' ? 1 : -1;
    if (steps_[i] == 'U' && height == 1 && i + 1 < steps_.size() && steps_[i + 1] == 'D') {
      ++peaks;
    }
  }
  return peaks;
}

PlaneTree::PlaneTree() : PlaneTree(std::vector<std::uint32_t>{0}) {}

PlaneTree::PlaneTree(std::vector<std::uint32_t> preorder_degrees)
    : degree_(std::move(preorder_degrees)) {
  const std::size_t n = degree_.size();
  if (n == 0) throw std::invalid_argument("tree must have at least one vertex");

  // Lukasiewicz condition: open slots stay positive until the final vertex.
  std::size_t open = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (open == 0) throw std::invalid_argument("degree sequence describes a forest");
    open = open - 1 + degree_[v];
  }
  if (open != 0) throw std::invalid_argument("degree sequence leaves unfilled child slots");

  parent_.assign(n, n);
  depth_.assign(n, 0);
  subtree_.assign(n, 1);
  child_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) child_offset_[v + 1] = child_offset_[v] + degree_[v];
  child_list_.assign(n - 1, 0);

  struct Frame {
    std::size_t vertex;
    std::uint32_t filled;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0});
  for (std::size_t v = 1; v < n; ++v) {
    while (stack.back().filled == degree_[stack.back().vertex]) stack.pop_back();
    Frame &top = stack.back();
    parent_[v] = top.vertex;
    depth_[v] = depth_[top.vertex] + 1;
    child_list_[child_offset_[top.vertex] + top.filled] = v;
    ++top.filled;
    if (degree_[v] > 0) stack.push_back({v, 0});
  }
  for (std::size_t v = n; v-- > 1;) subtree_[parent_[v]] += subtree_[v];
}

std::uint32_t PlaneTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

PlaneTree tree_from_dyck(const DyckPath &path) {
  // Each U opens a new child of the current vertex; each D returns to the parent.
  std::vector<std::uint32_t> degrees{0};
  std::vector<std::size_t> stack{0};
  degrees.reserve(path.semilength() + 1);
  for (char c : path.steps()) {
    if (c == 'U') {
      ++degrees[stack.back()];
      stack.push_back(degrees.size());
      degrees.push_back(0);
    } else {
      stack.pop_back();
    }
  }
  return PlaneTree(std::move(degrees));
}

DyckPath dyck_from_tree(const PlaneTree &tree) {
  std::string steps;
  steps.reserve(2 * (tree.size() - 1));
  std::uint32_t prev_depth = 0;
  for (std::size_t v = 1; v < tree.size(); ++v) {
    const std::uint32_t d = tree.depth(v);
    steps.append(prev_depth + 1 - d, 'D');
    steps.push_back('U');
    prev_depth = d;
  }
  steps.append(prev_depth, 'D');
  return DyckPath(std::move(steps));
}

PlaneTree parse_tree(std::string_view word) {
  while (!word.empty() && (word.back() == '\n' || word.back() == '\r' || word.back() == ' ')) {
    word.remove_suffix(1);
  }
  while (!word.empty() && word.front() == ' ') word.remove_prefix(1);
  return tree_from_dyck(DyckPath(std::string(word)));
}

std::string format_tree(const PlaneTree &tree) { return dyck_from_tree(tree).steps(); }

LeafStats leaf_stats(const PlaneTree &tree) {
  if (tree.size() < 2) throw std::invalid_argument("leaf_stats needs at least two vertices");
  LeafStats out;
  for (std::size_t v = 1; v < tree.size(); ++v) {
    if (!tree.is_leaf(v)) continue;
    out.leaves.push_back(v);
    out.s.push_back(static_cast<int>(v));
    out.p.push_back(static_cast<int>(tree.depth(v)));
  }
  return out;
}

PlaneTree truncate_tree(const PlaneTree &tree, std::uint32_t max_depth) {
  std::vector<std::uint32_t> degrees;
  degrees.reserve(tree.size());
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const std::uint32_t d = tree.depth(v);
    if (d > max_depth) continue;
    degrees.push_back(d == max_depth ? 0 : tree.degree(v));
  }
  return PlaneTree(std::move(degrees));
}

std::vector<FringeEntry> fringe_decomposition(const PlaneTree &tree) {
  if (tree.size() < 2) throw std::invalid_argument("fringe_decomposition needs at least two vertices");
  std::vector<FringeEntry> out;
  for (std::size_t c : tree.children(0)) {
    const std::size_t size = tree.subtree_size(c);
    out.push_back({size, size == 1});
  }
  return out;
}

FrontBack tree_fixed_point_measures(const PlaneTree &tree) {
  const auto fringe = fringe_decomposition(tree);
  const std::size_t n = tree.size() - 1;
  const std::size_t half = n / 2;

  // split = first root child (0-based) whose prefix size exceeds n/2
  std::size_t split = fringe.size();
  std::size_t prefix = 0;
  std::vector<std::int64_t> front;
  for (std::size_t i = 0; i < fringe.size(); ++i) {
    prefix += fringe[i].size;
    if (prefix > half) {
      split = i;
      break;
    }
    if (fringe[i].single_vertex) front.push_back(static_cast<std::int64_t>(prefix));
  }

  std::vector<std::int64_t> back;
  std::size_t suffix = 0;
  for (std::size_t i = fringe.size(); i-- > split;) {
    suffix += fringe[i].size;
    if (fringe[i].single_vertex) back.push_back(static_cast<std::int64_t>(suffix));
  }
  return {FixedPointMeasure(std::move(front)), FixedPointMeasure(std::move(back))};
}

void enumerate_trees(std::size_t vertices, const std::function<void(const PlaneTree &)> &visit) {
  if (vertices < 1 || vertices > kMaxEnumerateVertices) {
    throw std::invalid_argument("enumerate_trees: vertex count " + std::to_string(vertices) +
                                " outside 1.." + std::to_string(kMaxEnumerateVertices));
  }
  const std::size_t n = vertices - 1;
  std::string word;
  word.reserve(2 * n);
  std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t ups, std::size_t downs) {
    if (ups == n && downs == n) {
      visit(tree_from_dyck(DyckPath(word)));
      return;
    }
    if (ups < n) {
      word.push_back('U');
      grow(ups + 1, downs);
      word.pop_back();
    }
    if (downs < ups) {
      word.push_back('D');
      grow(ups, downs + 1);
      word.pop_back();
    }
  };
  grow(0, 0);
}

} // namespace av321
