#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dendrolim/detail/rooted_index.hpp"
#include "dendrolim/error.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

using GraphEdge = std::pair<int, int>;

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

/// Checks that (n, edges) is a tree on vertices [0, n). The first issue is
/// the first violated invariant in the order BadEdgeIndex, HasCycle,
/// NotConnected.
Issues validate_tree(int vertex_count, std::span<const GraphEdge> edges);

/// Combinatorial tree with unit edges and the uniform vertex measure.
/// Immutable; the constructor validates and throws Error on failure.
class FiniteTree {
 public:
  FiniteTree(int vertex_count, std::vector<GraphEdge> edges);

  int vertex_count() const noexcept { return n_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const noexcept { return adj_; }

  int hop_distance(int u, int v) const { return index_.hop_distance(u, v); }
  /// BFS hop counts from `source`.
  std::vector<int> hops_from(int source) const;
  /// Hop diameter (0 for a single vertex).
  int diameter() const noexcept { return diameter_; }
  /// Two vertices realizing the diameter.
  std::pair<int, int> diameter_endpoints() const noexcept { return diameter_ends_; }

 private:
  int n_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<int>> adj_;
  detail::RootedIndex index_;
  int diameter_ = 0;
  std::pair<int, int> diameter_ends_{0, 0};
};

/// Hop distances divided by the diameter. Throws TrivialTree for n = 1.
DistanceMatrix normalized_distance_matrix(const FiniteTree& t);

/// Exact sampling measure: all n^r ordered vertex tuples (with replacement)
/// pushed through the normalized metric. Throws EnumerationTooLarge if
/// n^r > cap.
SamplingMeasure tau_exact(const FiniteTree& t, int r, std::int64_t cap = kDefaultEnumerationCap);

/// Monte-Carlo sampling measure from num_samples i.i.d. uniform r-tuples.
/// `shards` > 1 splits the draws across threads with per-shard streams.
SamplingMeasure tau_sample(const FiniteTree& t, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards = 1);

}  // namespace dendrolim
