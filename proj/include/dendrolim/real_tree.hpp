#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dendrolim/detail/rooted_index.hpp"
#include "dendrolim/error.hpp"
#include "dendrolim/finite_tree.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

/// Tolerance for point membership and offset canonicalization.
inline constexpr double kPointEps = 1e-12;
/// Tolerance for comparing derived distances.
inline constexpr double kDistanceTol = 1e-9;

struct SkeletonEdge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// A point of a finite real tree: a vertex, or a position strictly inside an
/// edge measured from the edge's `u` endpoint.
class TreePoint {
 public:
  static TreePoint vertex(int index) { return TreePoint(index, -1, 0.0); }
  static TreePoint on_edge(int edge, double offset) { return TreePoint(-1, edge, offset); }

  bool is_vertex() const noexcept { return vertex_ >= 0; }
  int vertex_index() const noexcept { return vertex_; }
  int edge_index() const noexcept { return edge_; }
  double offset() const noexcept { return offset_; }

  friend bool operator==(const TreePoint&, const TreePoint&) = default;

 private:
  TreePoint(int v, int e, double off) : vertex_(v), edge_(e), offset_(off) {}
  int vertex_;
  int edge_;
  double offset_;
};

/// Part of a geodesic running along one edge from offset `from` to `to`.
struct PathPiece {
  int edge;
  double from;
  double to;
  double length() const { return from < to ? to - from : from - to; }
};

/// Finite tree whose edges are intervals of positive length. Immutable.
class RealTreeSkeleton {
 public:
  /// Throws NotConnected/HasCycle/BadEdgeIndex/BadEdgeLength.
  RealTreeSkeleton(int vertex_count, std::vector<SkeletonEdge> edges);

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<SkeletonEdge>& edges() const noexcept { return edges_; }
  const SkeletonEdge& edge(int e) const { return edges_[e]; }
  /// Edge indices incident to v.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int other_end(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

  /// Validates p and moves offsets at (or within kPointEps of) an edge end
  /// onto the vertex. Throws InvalidPoint.
  TreePoint canonical(const TreePoint& p) const;

  double vertex_distance(int a, int b) const { return index_.distance(a, b); }
  double distance(const TreePoint& p, const TreePoint& q) const;
  /// Unique arc from p to q as edge pieces in walking order.
  std::vector<PathPiece> path(const TreePoint& p, const TreePoint& q) const;
  /// Point at arc length t from p towards q (t clamped to [0, d(p,q)]).
  TreePoint point_along(const TreePoint& p, const TreePoint& q, double t) const;

  /// True if vertex x lies on the child side of edge e in the rooted view.
  bool below(int e, int x) const;
  /// Length of the longest vertex-to-vertex arc.
  double diameter() const;
  double total_length() const;

  const detail::RootedIndex& index() const noexcept { return index_; }

 private:
  // endpoint of p's edge on the way to q (p is an edge point)
  int exit_vertex(const TreePoint& p, const TreePoint& q) const;
  int child_of(int e) const;

  int n_;
  std::vector<SkeletonEdge> edges_;
  std::vector<std::vector<int>> incident_;
  detail::RootedIndex index_;
};

double point_distance(const RealTreeSkeleton& s, const TreePoint& p, const TreePoint& q);

/// Closed connected subset of a skeleton: per edge an optional covered
/// interval [lo, hi] of offsets, plus vertex membership.
class Subtree {
 public:
  Subtree() = default;
  static Subtree singleton(const RealTreeSkeleton& s, const TreePoint& p);
  static Subtree whole(const RealTreeSkeleton& s);

  bool contains(const RealTreeSkeleton& s, const TreePoint& p) const;
  bool has_vertex(int v) const { return vertex_[v] != 0; }
  const std::optional<std::pair<double, double>>& cover(int e) const { return cover_[e]; }
  /// True if the subtree is the whole skeleton.
  bool is_whole(const RealTreeSkeleton& s) const;
  double length() const;
  /// Some point of the subtree.
  TreePoint anchor(const RealTreeSkeleton& s) const;
  /// Points where the subtree stops strictly inside an edge.
  std::vector<TreePoint> boundary_points(const RealTreeSkeleton& s) const;
  /// Length of the part of an arc lying in the subtree.
  double overlap_length(std::span<const PathPiece> arc) const;

  void add_path(const RealTreeSkeleton& s, std::span<const PathPiece> pieces);

  bool approx_equal(const Subtree& other, double tol) const;

 private:
  void mark_point(const RealTreeSkeleton& s, const TreePoint& p);
  std::vector<std::optional<std::pair<double, double>>> cover_;
  std::vector<char> vertex_;
};

/// Smallest closed connected set containing all points: the union of the
/// arcs [pts[0], pts[i]].
Subtree minimal_spanning_subtree(const RealTreeSkeleton& s, std::span<const TreePoint> pts);

/// Closest point of y to p.
TreePoint retract(const RealTreeSkeleton& s, const Subtree& y, const TreePoint& p);

/// A subtree materialized as a skeleton of its own. `marks` are points of
/// the subtree that must become vertices; `mark_vertex[i]` is the new vertex
/// for marks[i] and `vertex_map[v]` the new index of old vertex v (-1 if v is
/// not in the subtree).
struct ExtractedSubtree {
  RealTreeSkeleton skeleton;
  std::vector<int> mark_vertex;
  std::vector<int> vertex_map;
};

ExtractedSubtree extract_subtree(const RealTreeSkeleton& s, const Subtree& y,
                                 std::span<const TreePoint> marks);

struct VertexAtom {
  int vertex = 0;
  double mass = 0.0;
};

struct InteriorAtom {
  int edge = 0;
  double offset = 0.0;
  double mass = 0.0;
};

/// Finite real tree with an atomic probability measure sitting on vertices.
class MeasuredRealTree {
 public:
  /// Throws InvalidMeasure/WeightsNotNormalized on bad atoms.
  MeasuredRealTree(RealTreeSkeleton skeleton, std::vector<VertexAtom> atoms);

  /// Accepts atoms in edge interiors and splits edges so that every atom
  /// sits on a vertex. Duplicate atom positions are merged.
  static MeasuredRealTree from_input(int vertex_count, std::vector<SkeletonEdge> edges,
                                     std::vector<VertexAtom> atoms,
                                     std::vector<InteriorAtom> interior_atoms);

  const RealTreeSkeleton& skeleton() const noexcept { return skeleton_; }
  const std::vector<VertexAtom>& atoms() const noexcept { return atoms_; }
  /// Mass at vertex v (0 if none).
  double mass_at(int v) const;
  std::vector<TreePoint> atom_points() const;

 private:
  RealTreeSkeleton skeleton_;
  std::vector<VertexAtom> atoms_;
  std::vector<double> mass_by_vertex_;
};

/// Exact sampling measure of (T, d, mu) by enumerating atom tuples.
SamplingMeasure tau_exact(const MeasuredRealTree& m, int r,
                          std::int64_t cap = kDefaultEnumerationCap);
SamplingMeasure tau_sample(const MeasuredRealTree& m, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards = 1);

}  // namespace dendrolim
