#pragma once

#include <span>
#include <utility>
#include <vector>

namespace dendrolim::detail {

/// Rooted view of a tree (root 0) with binary-lifting ancestor tables.
/// Edge weights default to 1; `lengths` may be empty.
class RootedIndex {
 public:
  RootedIndex() = default;
  RootedIndex(int n, std::span<const std::pair<int, int>> edges, std::span<const double> lengths);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[v]; }
  /// Index of the edge to the parent, -1 at the root.
  int parent_edge(int v) const { return parent_edge_[v]; }
  int depth(int v) const { return depth_[v]; }
  double root_distance(int v) const { return root_dist_[v]; }
  /// Vertices in DFS preorder; parents precede children.
  const std::vector<int>& preorder() const { return order_; }

  bool is_ancestor(int a, int v) const { return tin_[a] <= tin_[v] && tout_[v] <= tout_[a]; }
  int lca(int u, int v) const;
  int hop_distance(int u, int v) const;
  double distance(int u, int v) const;

  /// Edges from u to v in walking order, each with the vertex it is entered
  /// from.
  std::vector<std::pair<int, int>> edge_path(int u, int v) const;

 private:
  std::vector<int> parent_, parent_edge_, depth_, tin_, tout_, order_;
  std::vector<double> root_dist_;
  std::vector<std::vector<int>> up_;
};

}  // namespace dendrolim::detail
