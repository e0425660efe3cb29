#include "dendrolim/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

namespace dendrolim {

namespace {

// Points closer than this along the construction are identified.
constexpr double kSnap = 1e-12;

// Tree under construction, rooted at q_1 = vertex 0.
struct GrowingTree {
  std::vector<int> parent{-1};
  std::vector<double> parent_length{0.0};
  std::vector<double> root_distance{0.0};

  int add_vertex(int p, double length) {
    parent.push_back(p);
    parent_length.push_back(length);
    root_distance.push_back(p < 0 ? 0.0 : root_distance[p] + length);
    return static_cast<int>(parent.size()) - 1;
  }

  // Point at root distance `depth` on the root path of `v`, as a vertex
  // (splitting an edge if needed).
  int locate(int v, double depth) {
    int x = v;
    if (std::abs(root_distance[x] - depth) <= kSnap) return x;
    while (true) {
      int p = parent[x];
      if (p < 0) return x;
      if (std::abs(root_distance[p] - depth) <= kSnap) return p;
      if (root_distance[p] > depth) {
        x = p;
        continue;
      }
      int mid = add_vertex(p, depth - root_distance[p]);
      root_distance[mid] = depth;
      parent[x] = mid;
      parent_length[x] = root_distance[x] - depth;
      return mid;
    }
  }
};

}  // namespace

ATree build_a_tree_with_points(const DistanceMatrix& a) {
  const int n = a.order();
  GrowingTree g;
  std::vector<int> q(static_cast<std::size_t>(n), 0);
  for (int i = 1; i < n; ++i) {
    const double d1i = a.at(0, i);
    double best = -std::numeric_limits<double>::infinity();
    int best_j = 0;
    for (int j = 0; j < i; ++j) {
      double gp = (d1i + a.at(0, j) - a.at(i, j)) / 2.0;
      if (gp < -kDistanceTol)
        throw Error(ErrorCode::NegativeGromovProduct,
                    "Gromov product of points " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " at point 1 is " + std::to_string(gp));
      if (gp > best) {
        best = gp;
        best_j = j;
      }
    }
    double depth = std::clamp(best, 0.0, std::min(d1i, a.at(0, best_j)));
    int branch = g.locate(q[best_j], depth);
    double leaf = d1i - depth;
    q[i] = leaf <= kSnap ? branch : g.add_vertex(branch, leaf);
  }

  const int count = static_cast<int>(g.parent.size());
  std::vector<SkeletonEdge> edges;
  for (int v = 1; v < count; ++v) edges.push_back({g.parent[v], v, g.parent_length[v]});
  RealTreeSkeleton skeleton(count, std::move(edges));

  double worst = 0.0;
  int wi = 0, wj = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double residual = std::abs(skeleton.vertex_distance(q[i], q[j]) - a.at(i, j));
      if (residual > worst) {
        worst = residual;
        wi = i;
        wj = j;
      }
    }
  if (worst > kDistanceTol)
    throw Error(ErrorCode::NotATreeMetric,
                "reconstructed distance between points " + std::to_string(wi + 1) + " and " +
                    std::to_string(wj + 1) + " is off by " + std::to_string(worst));

  std::map<int, double> mass;
  for (int v : q) mass[v] += 1.0 / n;
  std::vector<VertexAtom> atoms;
  for (auto [v, w] : mass) atoms.push_back({v, w});
  return {MeasuredRealTree(std::move(skeleton), std::move(atoms)), std::move(q)};
}

MeasuredRealTree build_a_tree(const DistanceMatrix& a) { return build_a_tree_with_points(a).tree; }

MeasuredRealTree t_d_x(const FiniteDendron& d, const NSample& x) {
  if (x.empty()) throw Error(ErrorCode::BadInput, "n-sample must be non-empty");
  const auto& s = d.skeleton();
  std::vector<TreePoint> bases;
  for (const auto& p : x) {
    if (!(p.height >= 0.0) || !std::isfinite(p.height))
      throw Error(ErrorCode::InvalidPoint, "marked point height must be >= 0");
    bases.push_back(s.canonical(p.base));
  }
  Subtree t0 = minimal_spanning_subtree(s, bases);
  auto ext = extract_subtree(s, t0, bases);

  int count = ext.skeleton.vertex_count();
  std::vector<SkeletonEdge> edges = ext.skeleton.edges();
  std::map<int, double> mass;
  const double share = 1.0 / static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    int at = ext.mark_vertex[i];
    if (x[i].height > kPointEps) {
      int tip = count++;
      edges.push_back({at, tip, x[i].height});
      at = tip;
    }
    mass[at] += share;
  }
  std::vector<VertexAtom> atoms;
  for (auto [v, w] : mass) atoms.push_back({v, w});
  return MeasuredRealTree(RealTreeSkeleton(count, std::move(edges)), std::move(atoms));
}

DistanceMatrix rho_of_sample(const FiniteDendron& d, const NSample& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw Error(ErrorCode::BadInput, "n-sample must be non-empty");
  DistanceMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.set(i, j, d_D(d, x[i], x[j]));
  return m;
}

NSample draw_n_sample(const FiniteDendron& d, int n, Engine& engine) {
  const DendronSampler sampler(d);
  NSample x;
  x.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x.push_back(sampler(engine));
  return x;
}

bool spanned_by_atoms(const MeasuredRealTree& m) {
  auto pts = m.atom_points();
  return minimal_spanning_subtree(m.skeleton(), pts).is_whole(m.skeleton());
}

bool measured_isometry_check(const MeasuredRealTree& m1, const MeasuredRealTree& m2) {
  constexpr std::size_t kMaxAtoms = 12;
  if (m1.atoms().size() > kMaxAtoms || m2.atoms().size() > kMaxAtoms)
    throw Error(ErrorCode::TooManyAtoms, "isometry check supports at most 12 atoms");
  if (!spanned_by_atoms(m1))
    throw Error(ErrorCode::NotSpanned, "first tree is not spanned by its atoms");
  if (!spanned_by_atoms(m2))
    throw Error(ErrorCode::NotSpanned, "second tree is not spanned by its atoms");
  const std::size_t k = m1.atoms().size();
  if (k != m2.atoms().size()) return false;

  auto distances = [k](const MeasuredRealTree& m) {
    std::vector<double> out(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        out[i * k + j] = m.skeleton().vertex_distance(m.atoms()[i].vertex, m.atoms()[j].vertex);
    return out;
  };
  const auto d1 = distances(m1), d2 = distances(m2);
  std::vector<int> image(k, -1);
  std::vector<char> used(k, 0);

  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == k) return true;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      if (std::abs(m1.atoms()[i].mass - m2.atoms()[j].mass) > 1e-12) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p)
        ok = std::abs(d1[i * k + p] - d2[j * k + static_cast<std::size_t>(image[p])]) <=
             kDistanceTol;
      if (!ok) continue;
      used[j] = 1;
      image[i] = static_cast<int>(j);
      if (extend(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return extend(0);
}

}  // namespace dendrolim
