#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mtloss/image.hpp"

namespace mtloss {

/// Canonical max-tree of an image: one node per distinct connected component
/// of the upper level sets, with its altitude and the proper-pixel map.
///
/// Nodes are numbered root-first in topological order, so parent(c) < c for
/// every non-root node and the root is node 0. A bottom-up pass is a reverse
/// loop over node indices.
class MaxTree {
 public:
  std::size_t node_count() const noexcept { return parent_.size(); }
  std::size_t pixel_count() const noexcept { return proper_node_.size(); }
  std::size_t root() const noexcept { return 0; }

  std::size_t parent(std::size_t node) const { return parent_[node]; }
  double altitude(std::size_t node) const { return altitude_[node]; }
  std::size_t proper_node(std::size_t pixel) const { return proper_node_[pixel]; }

  std::span<const std::size_t> parents() const noexcept { return parent_; }
  std::span<const double> altitudes() const noexcept { return altitude_; }
  std::span<const std::size_t> proper_nodes() const noexcept { return proper_node_; }

  std::span<const std::size_t> children(std::size_t node) const {
    return {child_list_.data() + child_begin_[node], child_list_.data() + child_begin_[node + 1]};
  }
  bool is_leaf(std::size_t node) const { return child_begin_[node] == child_begin_[node + 1]; }

  const Grid& grid() const noexcept { return grid_; }

  /// Builds a tree from explicit arrays and checks every structural invariant.
  /// Throws InvalidArgument if the arrays do not describe a canonical tree.
  static MaxTree from_arrays(Grid grid, std::vector<std::size_t> parent, std::vector<double> altitude,
                             std::vector<std::size_t> proper_node);

 private:
  friend MaxTree build_maxtree(const Image& image);
  MaxTree(Grid grid, std::vector<std::size_t> parent, std::vector<double> altitude, std::vector<std::size_t> proper_node);
  void index_children();

  Grid grid_;
  std::vector<std::size_t> parent_;
  std::vector<double> altitude_;
  std::vector<std::size_t> proper_node_;
  std::vector<std::size_t> child_begin_;
  std::vector<std::size_t> child_list_;
};

/// Per-node attributes, computed in one bottom-up pass.
struct NodeAttributes {
  std::vector<std::size_t> area;          ///< pixels in the component
  std::vector<std::size_t> proper_count;  ///< proper pixels of the node
  /// Highest altitude in the subtree minus the node altitude (0 on leaves).
  std::vector<double> height;
  /// Sum over the component of (f_p - altitude of the parent). The root uses
  /// its own altitude as reference, so volume[root] = sum(f - min f).
  std::vector<double> volume;
};

/// Union-find over pixels sorted by decreasing value (ties by ascending
/// index), followed by canonicalization of equal-level chains.
MaxTree build_maxtree(const Image& image);

/// Nodes without children, ascending. Every MeasureVector is indexed by this list.
std::vector<std::size_t> leaves(const MaxTree& tree);

NodeAttributes compute_attributes(const MaxTree& tree);

/// g_v = altitude[proper_node[v]].
Image reconstruct(const MaxTree& tree);

}  // namespace mtloss
