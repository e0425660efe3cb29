#include "dendrolim/finite_tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dendrolim/rng.hpp"

namespace dendrolim {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

// Saturating n^r; returns cap + 1 once the product exceeds cap.
std::int64_t bounded_power(std::int64_t n, int r, std::int64_t cap) {
  std::int64_t p = 1;
  for (int k = 0; k < r; ++k) {
    if (p > cap / std::max<std::int64_t>(n, 1)) return cap + 1;
    p *= n;
  }
  return p;
}

}  // namespace

Issues validate_tree(int vertex_count, std::span<const GraphEdge> edges) {
  Issues issues;
  if (vertex_count < 1) {
    issues.push_back({ErrorCode::BadEdgeIndex, "vertex count must be positive"});
    return issues;
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      issues.push_back({ErrorCode::BadEdgeIndex, "edge " + std::to_string(e) + " (" +
                                                     std::to_string(u) + "," + std::to_string(v) +
                                                     ") has a vertex outside [0, n)"});
      return issues;
    }
  }
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  int components = vertex_count;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int a = find_root(parent, edges[e].first), b = find_root(parent, edges[e].second);
    if (a == b) {
      issues.push_back({ErrorCode::HasCycle, "edge " + std::to_string(e) + " closes a cycle"});
      return issues;
    }
    parent[a] = b;
    --components;
  }
  if (components != 1)
    issues.push_back({ErrorCode::NotConnected,
                      "graph has " + std::to_string(components) + " connected components"});
  return issues;
}

FiniteTree::FiniteTree(int vertex_count, std::vector<GraphEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  throw_if_any(validate_tree(n_, edges_));
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  index_ = detail::RootedIndex(n_, edges_, {});
  auto h0 = hops_from(0);
  int a = static_cast<int>(std::max_element(h0.begin(), h0.end()) - h0.begin());
  auto ha = hops_from(a);
  int b = static_cast<int>(std::max_element(ha.begin(), ha.end()) - ha.begin());
  diameter_ = ha[b];
  diameter_ends_ = {a, b};
}

std::vector<int> FiniteTree::hops_from(int source) const {
  std::vector<int> dist(static_cast<std::size_t>(n_), -1);
  std::vector<int> queue;
  queue.reserve(static_cast<std::size_t>(n_));
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : adj_[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

DistanceMatrix normalized_distance_matrix(const FiniteTree& t) {
  int n = t.vertex_count();
  if (n < 2) throw Error(ErrorCode::TrivialTree, "normalized metric needs at least 2 vertices");
  const double diam = t.diameter();
  DistanceMatrix m(n);
  for (int u = 0; u < n; ++u) {
    auto hops = t.hops_from(u);
    for (int v = u + 1; v < n; ++v) m.set(u, v, hops[v] / diam);
  }
  return m;
}

SamplingMeasure tau_exact(const FiniteTree& t, int r, std::int64_t cap) {
  const int n = t.vertex_count();
  if (n < 2) throw Error(ErrorCode::TrivialTree, "sampling measure needs at least 2 vertices");
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  const std::int64_t total = bounded_power(n, r, cap);
  if (total > cap)
    throw Error(ErrorCode::EnumerationTooLarge,
                std::to_string(n) + "^" + std::to_string(r) + " tuples exceed cap " +
                    std::to_string(cap));
  const int diam = t.diameter();
  const double dtotal = static_cast<double>(total);
  MeasureBuilder builder(r);

  if (r == 1) {
    builder.add({}, 1.0);
    auto m = builder.finish_exact();
    m.denominator = 1;
    return m;
  }
  if (r == 2) {
    // streaming all-pairs: one BFS per source, histogram of hop counts
    std::vector<std::int64_t> hist(static_cast<std::size_t>(diam) + 1, 0);
    for (int u = 0; u < n; ++u)
      for (int h : t.hops_from(u)) ++hist[h];
    for (int h = 0; h <= diam; ++h)
      if (hist[h] > 0) builder.add({static_cast<double>(h) / diam}, hist[h] / dtotal);
    auto m = builder.finish_exact();
    m.denominator = total;
    return m;
  }

  // r >= 3: n is small here (n^3 <= cap), keep the full hop matrix
  std::vector<int> hops(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    auto row = t.hops_from(u);
    std::copy(row.begin(), row.end(), hops.begin() + static_cast<std::ptrdiff_t>(u) * n);
  }
  const std::size_t m = upper_size(r);
  const std::uint64_t base = static_cast<std::uint64_t>(diam) + 1;
  bool packable = true;
  {
    long double span = 1;
    for (std::size_t k = 0; k < m; ++k) span *= base;
    packable = span < 1.8e19L;
  }
  std::unordered_map<std::uint64_t, std::int64_t> packed;
  std::map<std::vector<int>, std::int64_t> unpacked;
  std::vector<int> tuple(static_cast<std::size_t>(r), 0);
  std::vector<int> key(m);
  for (std::int64_t step = 0; step < total; ++step) {
    std::size_t k = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        key[k++] = hops[static_cast<std::size_t>(tuple[i]) * n + tuple[j]];
    if (packable) {
      std::uint64_t code = 0;
      for (int h : key) code = code * base + static_cast<std::uint64_t>(h);
      ++packed[code];
    } else {
      ++unpacked[key];
    }
    for (int pos = r - 1; pos >= 0; --pos) {
      if (++tuple[pos] < n) break;
      tuple[pos] = 0;
    }
  }
  auto emit = [&](const std::vector<int>& hk, std::int64_t count) {
    std::vector<double> upper(hk.size());
    for (std::size_t i = 0; i < hk.size(); ++i) upper[i] = static_cast<double>(hk[i]) / diam;
    builder.add(std::move(upper), count / dtotal);
  };
  for (const auto& [code, count] : packed) {
    std::vector<int> hk(m);
    std::uint64_t c = code;
    for (std::size_t i = m; i-- > 0;) {
      hk[i] = static_cast<int>(c % base);
      c /= base;
    }
    emit(hk, count);
  }
  for (const auto& [hk, count] : unpacked) emit(hk, count);
  auto out = builder.finish_exact();
  out.denominator = total;
  return out;
}

SamplingMeasure tau_sample(const FiniteTree& t, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards) {
  const int n = t.vertex_count();
  if (n < 2) throw Error(ErrorCode::TrivialTree, "sampling measure needs at least 2 vertices");
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  if (num_samples < 1) throw Error(ErrorCode::BadInput, "num_samples must be >= 1");
  const double diam = t.diameter();
  return sample_empirical(r, num_samples, seed, shards, [&](Engine& engine) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> tuple(static_cast<std::size_t>(r));
    for (auto& v : tuple) v = pick(engine);
    std::vector<double> upper;
    upper.reserve(upper_size(r));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) upper.push_back(t.hop_distance(tuple[i], tuple[j]) / diam);
    return upper;
  });
}

}  // namespace dendrolim
