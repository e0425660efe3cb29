#include "dendrolim/detail/rooted_index.hpp"

#include <algorithm>

namespace dendrolim::detail {

RootedIndex::RootedIndex(int n, std::span<const std::pair<int, int>> edges,
                         std::span<const double> lengths) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].push_back({edges[e].second, e});
    adj[edges[e].second].push_back({edges[e].first, e});
  }
  parent_.assign(n, -1);
  parent_edge_.assign(n, -1);
  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  root_dist_.assign(n, 0.0);
  order_.reserve(n);

  // iterative DFS: (vertex, next adjacency slot)
  std::vector<std::pair<int, std::size_t>> stack;
  int clock = 0;
  stack.push_back({0, 0});
  tin_[0] = clock++;
  order_.push_back(0);
  while (!stack.empty()) {
    auto& [v, slot] = stack.back();
    if (slot < adj[v].size()) {
      auto [w, e] = adj[v][slot++];
      if (w == parent_[v] && e == parent_edge_[v]) continue;
      parent_[w] = v;
      parent_edge_[w] = e;
      depth_[w] = depth_[v] + 1;
      root_dist_[w] = root_dist_[v] + (lengths.empty() ? 1.0 : lengths[e]);
      tin_[w] = clock++;
      order_.push_back(w);
      stack.push_back({w, 0});
    } else {
      tout_[v] = clock++;
      stack.pop_back();
    }
  }

  int levels = 1;
  while ((1 << levels) < n) ++levels;
  up_.assign(levels, std::vector<int>(n));
  for (int v = 0; v < n; ++v) up_[0][v] = parent_[v] < 0 ? v : parent_[v];
  for (int k = 1; k < levels; ++k)
    for (int v = 0; v < n; ++v) up_[k][v] = up_[k - 1][up_[k - 1][v]];
}

int RootedIndex::lca(int u, int v) const {
  if (is_ancestor(u, v)) return u;
  if (is_ancestor(v, u)) return v;
  for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k)
    if (!is_ancestor(up_[k][u], v)) u = up_[k][u];
  return parent_[u];
}

int RootedIndex::hop_distance(int u, int v) const {
  return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
}

double RootedIndex::distance(int u, int v) const {
  if (u == v) return 0.0;
  int a = lca(u, v);
  // order-independent so that distance(u,v) == distance(v,u) bitwise
  double du = root_dist_[u] - root_dist_[a];
  double dv = root_dist_[v] - root_dist_[a];
  return std::min(du, dv) + std::max(du, dv);
}

std::vector<std::pair<int, int>> RootedIndex::edge_path(int u, int v) const {
  int a = lca(u, v);
  std::vector<std::pair<int, int>> up_part, down_part;
  for (int x = u; x != a; x = parent_[x]) up_part.push_back({parent_edge_[x], x});
  for (int x = v; x != a; x = parent_[x]) down_part.push_back({parent_edge_[x], parent_[x]});
  std::reverse(down_part.begin(), down_part.end());
  up_part.insert(up_part.end(), down_part.begin(), down_part.end());
  return up_part;
}

}  // namespace dendrolim::detail
