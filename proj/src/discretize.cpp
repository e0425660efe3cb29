#include "dendrolim/discretize.hpp"

#include <cmath>
#include <string>

namespace dendrolim {

namespace {

// ceil that forgives rounding noise such as 0.1 * 10 = 1.0000000000000002
std::int64_t soft_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))));
}

}  // namespace

Realization realize(const MeasuredRealTree& m, int n) {
  if (n < 2) throw Error(ErrorCode::BadInput, "n must be >= 2");
  const auto& s = m.skeleton();
  double diam = s.diameter();
  if (diam > 1.0 + 1e-12)
    throw Error(ErrorCode::DiameterTooLarge,
                "tree diameter " + std::to_string(diam) + " exceeds 1");

  int count = s.vertex_count();
  std::vector<GraphEdge> edges;
  for (const auto& e : s.edges()) {
    std::int64_t hops = std::max<std::int64_t>(1, soft_ceil(e.length * n));
    int prev = e.u;
    for (std::int64_t k = 1; k < hops; ++k) {
      edges.push_back({prev, count});
      prev = count++;
    }
    edges.push_back({prev, e.v});
  }

  Realization out{FiniteTree(1, {}), {}, 0, false};
  const double n2 = static_cast<double>(n) * n;
  for (const auto& a : m.atoms()) {
    std::int64_t leaves = soft_ceil(a.mass * n2);
    auto& cls = out.leaf_classes[a.vertex];
    for (std::int64_t k = 0; k < leaves; ++k) {
      edges.push_back({a.vertex, count});
      cls.push_back(count++);
    }
  }

  FiniteTree scaffold(count, edges);
  out.scaffold_diameter = scaffold.diameter();
  if (out.scaffold_diameter < n) {
    int prev = scaffold.diameter_endpoints().first;
    for (int k = out.scaffold_diameter; k < n; ++k) {
      edges.push_back({prev, count});
      prev = count++;
    }
    out.extended = true;
    out.tree = FiniteTree(count, std::move(edges));
  } else {
    out.tree = std::move(scaffold);
  }
  return out;
}

}  // namespace dendrolim
