#include "dendrolim/families.hpp"

#include <cmath>
#include <string>

namespace dendrolim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::BadInput, what);
}

}  // namespace

FiniteTree gen_path(int n) {
  require(n >= 2, "path needs n >= 2");
  std::vector<GraphEdge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return FiniteTree(n, std::move(edges));
}

FiniteTree gen_star(int n) {
  require(n >= 3, "star needs n >= 3");
  std::vector<GraphEdge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({0, v});
  return FiniteTree(n, std::move(edges));
}

FiniteTree gen_binary(int h) {
  require(h >= 2 && h <= 26, "binary tree needs 2 <= h <= 26");
  const int n = (1 << h) - 1;
  std::vector<GraphEdge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({(v - 1) / 2, v});
  return FiniteTree(n, std::move(edges));
}

FiniteTree gen_stretched_binary(int n) {
  require(n >= 2 && n <= 20, "stretched binary tree needs 2 <= n <= 20");
  const int base = (1 << n) - 1;
  std::vector<GraphEdge> edges;
  int count = base;
  for (int v = 1; v < base; ++v) {
    int depth = static_cast<int>(std::floor(std::log2(v + 1)));
    int hops = (n * n) / (depth * depth);
    int prev = (v - 1) / 2;
    for (int k = 1; k < hops; ++k) {
      edges.push_back({prev, count});
      prev = count++;
    }
    edges.push_back({prev, v});
  }
  return FiniteTree(count, std::move(edges));
}

FiniteTree gen_comb(int n) {
  require(n >= 2, "comb needs n >= 2");
  std::vector<GraphEdge> edges;
  for (int v = 1; v < n; ++v) edges.push_back({v - 1, v});
  int count = n;
  for (int v = 0; v < n; ++v) {
    int prev = v;
    for (int k = 1; k < n; ++k) {
      edges.push_back({prev, count});
      prev = count++;
    }
  }
  return FiniteTree(count, std::move(edges));
}

FiniteTree gen_deep2(int n) {
  require(n >= 2 && n <= 22, "depth-two tree needs 2 <= n <= 22");
  std::vector<GraphEdge> edges;
  int count = n + 1;
  for (int i = 1; i <= n; ++i) {
    edges.push_back({0, i});
    for (int c = 0; c < (1 << i); ++c) edges.push_back({i, count++});
  }
  return FiniteTree(count, std::move(edges));
}

FiniteDendron limit_path() {
  RealTreeSkeleton s(2, {{0, 1, 1.0}});
  return FiniteDendron(std::move(s), {{1.0,
                                       SegmentBase{TreePoint::vertex(0), TreePoint::vertex(1)},
                                       FixedHeight{0.0}}});
}

FiniteDendron limit_star() {
  RealTreeSkeleton s(1, {});
  return FiniteDendron(std::move(s), {{1.0, PointBase{TreePoint::vertex(0)}, FixedHeight{0.5}}});
}

FiniteDendron limit_comb() {
  RealTreeSkeleton s(2, {{0, 1, 1.0 / 3.0}});
  return FiniteDendron(std::move(s), {{1.0,
                                       SegmentBase{TreePoint::vertex(0), TreePoint::vertex(1)},
                                       UniformHeight{0.0, 1.0 / 3.0}}});
}

TruncatedLimit limit_stretched_binary(int depth_k) {
  require(depth_k >= 1 && depth_k <= 16, "stretched binary limit needs 1 <= depth <= 16");
  const int n = (1 << (depth_k + 1)) - 1;
  std::vector<SkeletonEdge> edges;
  for (int v = 1; v < n; ++v) {
    int level = static_cast<int>(std::floor(std::log2(v + 1)));
    edges.push_back({(v - 1) / 2, v, kStretchedConstant / (level * level)});
  }
  double depth = 0.0;
  for (int i = 1; i <= depth_k; ++i) depth += kStretchedConstant / (i * i);
  const double height = std::max(0.0, 0.5 - depth);
  const int first_tip = (1 << depth_k) - 1;
  const double w = 1.0 / (1 << depth_k);
  std::vector<MeasureComponent> comps;
  for (int v = first_tip; v < n; ++v)
    comps.push_back({w, PointBase{TreePoint::vertex(v)}, FixedHeight{height}});
  return {FiniteDendron(RealTreeSkeleton(n, std::move(edges)), std::move(comps)), 2.0 * height};
}

TruncatedLimit limit_deep2(int arm_k) {
  require(arm_k >= 1 && arm_k <= 50, "depth-two limit needs 1 <= arms <= 50");
  const double kept = 1.0 - std::ldexp(1.0, -arm_k);
  if (arm_k == 1) {
    return {FiniteDendron(RealTreeSkeleton(1, {}),
                          {{1.0, PointBase{TreePoint::vertex(0)}, FixedHeight{0.25}}}),
            1.0 - kept};
  }
  std::vector<SkeletonEdge> edges;
  std::vector<MeasureComponent> comps;
  for (int i = 1; i <= arm_k; ++i) {
    edges.push_back({0, i, 0.25});
    comps.push_back({std::ldexp(1.0, -i) / kept, PointBase{TreePoint::vertex(i)},
                     FixedHeight{0.25}});
  }
  return {FiniteDendron(RealTreeSkeleton(arm_k + 1, std::move(edges)), std::move(comps)),
          1.0 - kept};
}

}  // namespace dendrolim
