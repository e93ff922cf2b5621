#pragma once

#include "av321/perm.hpp"
#include "av321/tree.hpp"

namespace av321 {

/// Maps a plane tree on n+1 vertices to a 321-avoiding permutation of {1..n}.
/// Leaf i (preorder) becomes the left-to-right maximum at position
/// s_i - p_i + 1 with value s_i; the remaining positions receive the
/// remaining values in increasing order. Rejects the single-vertex tree.
Permutation tree_to_perm(const PlaneTree &tree);

/// Inverse of tree_to_perm. Rebuilds the contour from the left-to-right
/// maxima: leaf i sits at preorder index s_i = perm(m_i) and depth
/// p_i = perm(m_i) - m_i + 1. Throws std::invalid_argument if perm contains 321.
PlaneTree perm_to_tree(const Permutation &perm);

} // namespace av321
