#include "dendrolim/real_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "dendrolim/rng.hpp"

namespace dendrolim {

namespace {

std::vector<GraphEdge> endpoints_of(const std::vector<SkeletonEdge>& edges) {
  std::vector<GraphEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<double> lengths_of(const std::vector<SkeletonEdge>& edges) {
  std::vector<double> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.length);
  return out;
}

// Odometer over tuples in [0, k)^r.
bool advance(std::vector<int>& tuple, int k) {
  for (int pos = static_cast<int>(tuple.size()) - 1; pos >= 0; --pos) {
    if (++tuple[pos] < k) return true;
    tuple[pos] = 0;
  }
  return false;
}

}  // namespace

RealTreeSkeleton::RealTreeSkeleton(int vertex_count, std::vector<SkeletonEdge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  auto pairs = endpoints_of(edges_);
  throw_if_any(validate_tree(n_, pairs));
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (!std::isfinite(edges_[e].length) || !(edges_[e].length > 0.0))
      throw Error(ErrorCode::BadEdgeLength,
                  "edge " + std::to_string(e) + " must have finite positive length");
  incident_.assign(static_cast<std::size_t>(n_), {});
  for (int e = 0; e < edge_count(); ++e) {
    incident_[edges_[e].u].push_back(e);
    incident_[edges_[e].v].push_back(e);
  }
  auto lengths = lengths_of(edges_);
  index_ = detail::RootedIndex(n_, pairs, lengths);
}

TreePoint RealTreeSkeleton::canonical(const TreePoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex_index() >= n_)
      throw Error(ErrorCode::InvalidPoint,
                  "vertex " + std::to_string(p.vertex_index()) + " out of range");
    return p;
  }
  int e = p.edge_index();
  if (e < 0 || e >= edge_count())
    throw Error(ErrorCode::InvalidPoint, "edge " + std::to_string(e) + " out of range");
  double off = p.offset();
  double len = edges_[e].length;
  if (!std::isfinite(off) || off < -kPointEps || off > len + kPointEps)
    throw Error(ErrorCode::InvalidPoint,
                "offset " + std::to_string(off) + " outside edge " + std::to_string(e));
  if (off <= kPointEps) return TreePoint::vertex(edges_[e].u);
  if (off >= len - kPointEps) return TreePoint::vertex(edges_[e].v);
  return p;
}

int RealTreeSkeleton::child_of(int e) const {
  const auto& ed = edges_[e];
  return index_.parent_edge(ed.u) == e ? ed.u : ed.v;
}

bool RealTreeSkeleton::below(int e, int x) const { return index_.is_ancestor(child_of(e), x); }

int RealTreeSkeleton::exit_vertex(const TreePoint& p, const TreePoint& q) const {
  int e = p.edge_index();
  int probe = q.is_vertex() ? q.vertex_index() : child_of(q.edge_index());
  int child = child_of(e);
  int parent = other_end(e, child);
  return index_.is_ancestor(child, probe) ? child : parent;
}

std::vector<PathPiece> RealTreeSkeleton::path(const TreePoint& p_in, const TreePoint& q_in) const {
  TreePoint p = canonical(p_in), q = canonical(q_in);
  std::vector<PathPiece> pieces;
  if (!p.is_vertex() && !q.is_vertex() && p.edge_index() == q.edge_index()) {
    if (p.offset() != q.offset()) pieces.push_back({p.edge_index(), p.offset(), q.offset()});
    return pieces;
  }
  int a = p.is_vertex() ? p.vertex_index() : exit_vertex(p, q);
  int b = q.is_vertex() ? q.vertex_index() : exit_vertex(q, p);
  auto end_offset = [this](int e, int v) { return edges_[e].u == v ? 0.0 : edges_[e].length; };
  if (!p.is_vertex()) pieces.push_back({p.edge_index(), p.offset(), end_offset(p.edge_index(), a)});
  for (auto [e, from] : index_.edge_path(a, b))
    pieces.push_back({e, end_offset(e, from), end_offset(e, other_end(e, from))});
  if (!q.is_vertex()) pieces.push_back({q.edge_index(), end_offset(q.edge_index(), b), q.offset()});
  return pieces;
}

double RealTreeSkeleton::distance(const TreePoint& p_in, const TreePoint& q_in) const {
  TreePoint p = canonical(p_in), q = canonical(q_in);
  if (p.is_vertex() && q.is_vertex()) return index_.distance(p.vertex_index(), q.vertex_index());
  if (!p.is_vertex() && !q.is_vertex() && p.edge_index() == q.edge_index())
    return std::abs(p.offset() - q.offset());
  double lead_p = 0.0, lead_q = 0.0;
  int a = p.vertex_index(), b = q.vertex_index();
  if (!p.is_vertex()) {
    a = exit_vertex(p, q);
    const auto& ed = edges_[p.edge_index()];
    lead_p = ed.u == a ? p.offset() : ed.length - p.offset();
  }
  if (!q.is_vertex()) {
    b = exit_vertex(q, p);
    const auto& ed = edges_[q.edge_index()];
    lead_q = ed.u == b ? q.offset() : ed.length - q.offset();
  }
  return index_.distance(a, b) + (lead_p + lead_q);
}

TreePoint RealTreeSkeleton::point_along(const TreePoint& p, const TreePoint& q, double t) const {
  auto pieces = path(p, q);
  if (pieces.empty() || t <= 0.0) return canonical(p);
  double remaining = t;
  for (const auto& piece : pieces) {
    double len = piece.length();
    if (remaining <= len) {
      double off = piece.from < piece.to ? piece.from + remaining : piece.from - remaining;
      return canonical(TreePoint::on_edge(piece.edge, off));
    }
    remaining -= len;
  }
  return canonical(q);
}

double RealTreeSkeleton::diameter() const {
  auto farthest = [this](int from) {
    int best = from;
    double best_d = 0.0;
    for (int v = 0; v < n_; ++v) {
      double d = index_.distance(from, v);
      if (d > best_d) {
        best_d = d;
        best = v;
      }
    }
    return std::pair{best, best_d};
  };
  auto [a, da] = farthest(0);
  (void)da;
  return farthest(a).second;
}

double RealTreeSkeleton::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

double point_distance(const RealTreeSkeleton& s, const TreePoint& p, const TreePoint& q) {
  return s.distance(p, q);
}

// ---------------------------------------------------------------------------
// Subtree

Subtree Subtree::singleton(const RealTreeSkeleton& s, const TreePoint& p) {
  Subtree y;
  y.cover_.assign(static_cast<std::size_t>(s.edge_count()), std::nullopt);
  y.vertex_.assign(static_cast<std::size_t>(s.vertex_count()), 0);
  y.mark_point(s, s.canonical(p));
  return y;
}

Subtree Subtree::whole(const RealTreeSkeleton& s) {
  Subtree y;
  y.vertex_.assign(static_cast<std::size_t>(s.vertex_count()), 1);
  y.cover_.reserve(static_cast<std::size_t>(s.edge_count()));
  for (const auto& e : s.edges()) y.cover_.push_back(std::pair{0.0, e.length});
  return y;
}

void Subtree::mark_point(const RealTreeSkeleton& s, const TreePoint& p) {
  (void)s;
  if (p.is_vertex()) {
    vertex_[p.vertex_index()] = 1;
    return;
  }
  auto& c = cover_[p.edge_index()];
  if (c)
    c = std::pair{std::min(c->first, p.offset()), std::max(c->second, p.offset())};
  else
    c = std::pair{p.offset(), p.offset()};
}

void Subtree::add_path(const RealTreeSkeleton& s, std::span<const PathPiece> pieces) {
  for (const auto& piece : pieces) {
    const auto& ed = s.edge(piece.edge);
    double lo = std::min(piece.from, piece.to), hi = std::max(piece.from, piece.to);
    if (lo <= kPointEps) {
      lo = 0.0;
      vertex_[ed.u] = 1;
    }
    if (hi >= ed.length - kPointEps) {
      hi = ed.length;
      vertex_[ed.v] = 1;
    }
    auto& c = cover_[piece.edge];
    if (c)
      c = std::pair{std::min(c->first, lo), std::max(c->second, hi)};
    else
      c = std::pair{lo, hi};
  }
}

bool Subtree::contains(const RealTreeSkeleton& s, const TreePoint& p_in) const {
  TreePoint p = s.canonical(p_in);
  if (p.is_vertex()) return vertex_[p.vertex_index()] != 0;
  const auto& c = cover_[p.edge_index()];
  return c && p.offset() >= c->first - kPointEps && p.offset() <= c->second + kPointEps;
}

bool Subtree::is_whole(const RealTreeSkeleton& s) const {
  for (char v : vertex_)
    if (!v) return false;
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& c = cover_[e];
    if (!c || c->first > kPointEps || c->second < s.edge(e).length - kPointEps) return false;
  }
  return true;
}

double Subtree::length() const {
  double total = 0.0;
  for (const auto& c : cover_)
    if (c) total += c->second - c->first;
  return total;
}

TreePoint Subtree::anchor(const RealTreeSkeleton& s) const {
  for (std::size_t v = 0; v < vertex_.size(); ++v)
    if (vertex_[v]) return TreePoint::vertex(static_cast<int>(v));
  for (std::size_t e = 0; e < cover_.size(); ++e)
    if (cover_[e]) return s.canonical(TreePoint::on_edge(static_cast<int>(e), cover_[e]->first));
  throw Error(ErrorCode::InvalidPoint, "empty subtree");
}

std::vector<TreePoint> Subtree::boundary_points(const RealTreeSkeleton& s) const {
  std::vector<TreePoint> out;
  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& c = cover_[e];
    if (!c) continue;
    if (c->first > kPointEps) out.push_back(TreePoint::on_edge(e, c->first));
    if (c->second < s.edge(e).length - kPointEps && c->second != c->first)
      out.push_back(TreePoint::on_edge(e, c->second));
  }
  return out;
}

double Subtree::overlap_length(std::span<const PathPiece> arc) const {
  double total = 0.0;
  for (const auto& piece : arc) {
    const auto& c = cover_[piece.edge];
    if (!c) continue;
    double lo = std::max(c->first, std::min(piece.from, piece.to));
    double hi = std::min(c->second, std::max(piece.from, piece.to));
    if (hi > lo) total += hi - lo;
  }
  return total;
}

bool Subtree::approx_equal(const Subtree& other, double tol) const {
  if (vertex_ != other.vertex_ || cover_.size() != other.cover_.size()) return false;
  for (std::size_t e = 0; e < cover_.size(); ++e) {
    const auto &a = cover_[e], &b = other.cover_[e];
    if (a.has_value() != b.has_value()) return false;
    if (a && (std::abs(a->first - b->first) > tol || std::abs(a->second - b->second) > tol))
      return false;
  }
  return true;
}

Subtree minimal_spanning_subtree(const RealTreeSkeleton& s, std::span<const TreePoint> pts) {
  if (pts.empty()) throw Error(ErrorCode::InvalidPoint, "spanning subtree of no points");
  Subtree y = Subtree::singleton(s, pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) y.add_path(s, s.path(pts[0], pts[i]));
  return y;
}

TreePoint retract(const RealTreeSkeleton& s, const Subtree& y, const TreePoint& p_in) {
  TreePoint p = s.canonical(p_in);
  if (y.contains(s, p)) return p;
  TreePoint target = y.anchor(s);
  auto pieces = s.path(p, target);
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& piece = pieces[k];
    const auto& ed = s.edge(piece.edge);
    if (k > 0) {
      int junction = piece.from == 0.0 ? ed.u : ed.v;
      if (y.has_vertex(junction)) return TreePoint::vertex(junction);
    }
    const auto& c = y.cover(piece.edge);
    if (!c) continue;
    double lo = std::min(piece.from, piece.to), hi = std::max(piece.from, piece.to);
    if (c->second < lo - kPointEps || c->first > hi + kPointEps) continue;
    double entry = piece.from < piece.to ? std::max(c->first, piece.from)
                                         : std::min(c->second, piece.from);
    return s.canonical(TreePoint::on_edge(piece.edge, entry));
  }
  return target;
}

ExtractedSubtree extract_subtree(const RealTreeSkeleton& s, const Subtree& y,
                                 std::span<const TreePoint> marks_in) {
  std::vector<TreePoint> marks;
  marks.reserve(marks_in.size());
  for (const auto& m : marks_in) {
    TreePoint c = s.canonical(m);
    if (!y.contains(s, c)) throw Error(ErrorCode::InvalidPoint, "mark outside the subtree");
    marks.push_back(c);
  }
  int next = 0;
  std::vector<int> vertex_map(static_cast<std::size_t>(s.vertex_count()), -1);
  for (int v = 0; v < s.vertex_count(); ++v)
    if (y.has_vertex(v)) vertex_map[v] = next++;

  std::vector<SkeletonEdge> edges;
  std::vector<int> mark_vertex(marks.size(), -1);
  for (std::size_t i = 0; i < marks.size(); ++i)
    if (marks[i].is_vertex()) mark_vertex[i] = vertex_map[marks[i].vertex_index()];

  for (int e = 0; e < s.edge_count(); ++e) {
    const auto& c = y.cover(e);
    if (!c) continue;
    const auto& ed = s.edge(e);
    std::vector<double> breaks{c->first, c->second};
    for (const auto& m : marks)
      if (!m.is_vertex() && m.edge_index() == e) breaks.push_back(m.offset());
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> uniq;
    for (double b : breaks)
      if (uniq.empty() || b - uniq.back() > kPointEps) uniq.push_back(b);
    std::vector<int> ids;
    ids.reserve(uniq.size());
    for (double b : uniq) {
      if (b <= kPointEps)
        ids.push_back(vertex_map[ed.u]);
      else if (b >= ed.length - kPointEps)
        ids.push_back(vertex_map[ed.v]);
      else
        ids.push_back(next++);
    }
    for (std::size_t k = 0; k + 1 < uniq.size(); ++k)
      edges.push_back({ids[k], ids[k + 1], uniq[k + 1] - uniq[k]});
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (marks[i].is_vertex() || marks[i].edge_index() != e) continue;
      auto it = std::min_element(uniq.begin(), uniq.end(), [&](double a, double b) {
        return std::abs(a - marks[i].offset()) < std::abs(b - marks[i].offset());
      });
      mark_vertex[i] = ids[static_cast<std::size_t>(it - uniq.begin())];
    }
  }
  return {RealTreeSkeleton(next, std::move(edges)), std::move(mark_vertex), std::move(vertex_map)};
}

// ---------------------------------------------------------------------------
// MeasuredRealTree

MeasuredRealTree::MeasuredRealTree(RealTreeSkeleton skeleton, std::vector<VertexAtom> atoms)
    : skeleton_(std::move(skeleton)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error(ErrorCode::InvalidMeasure, "measure has no atoms");
  mass_by_vertex_.assign(static_cast<std::size_t>(skeleton_.vertex_count()), 0.0);
  double total = 0.0;
  for (const auto& a : atoms_) {
    if (a.vertex < 0 || a.vertex >= skeleton_.vertex_count())
      throw Error(ErrorCode::InvalidMeasure, "atom vertex " + std::to_string(a.vertex) +
                                                 " out of range");
    if (!std::isfinite(a.mass) || !(a.mass > 0.0))
      throw Error(ErrorCode::InvalidMeasure, "atom masses must be positive");
    if (mass_by_vertex_[a.vertex] != 0.0)
      throw Error(ErrorCode::InvalidMeasure,
                  "duplicate atom at vertex " + std::to_string(a.vertex));
    mass_by_vertex_[a.vertex] = a.mass;
    total += a.mass;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorCode::WeightsNotNormalized,
                "atom masses sum to " + std::to_string(total) + ", not 1");
}

MeasuredRealTree MeasuredRealTree::from_input(int vertex_count, std::vector<SkeletonEdge> edges,
                                              std::vector<VertexAtom> atoms,
                                              std::vector<InteriorAtom> interior_atoms) {
  RealTreeSkeleton original(vertex_count, edges);
  std::map<int, double> by_vertex;
  for (const auto& a : atoms) {
    if (a.vertex < 0 || a.vertex >= vertex_count)
      throw Error(ErrorCode::InvalidMeasure, "atom vertex out of range");
    by_vertex[a.vertex] += a.mass;
  }
  std::map<int, std::vector<std::pair<double, double>>> by_edge;
  for (const auto& a : interior_atoms) {
    TreePoint p = original.canonical(TreePoint::on_edge(a.edge, a.offset));
    if (p.is_vertex())
      by_vertex[p.vertex_index()] += a.mass;
    else
      by_edge[a.edge].push_back({p.offset(), a.mass});
  }
  int n = vertex_count;
  for (auto& [e, list] : by_edge) {
    std::sort(list.begin(), list.end());
    const SkeletonEdge old = edges[e];
    int prev = old.u;
    double prev_off = 0.0;
    bool first = true;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (k > 0 && list[k].first - list[k - 1].first <= kPointEps) {
        by_vertex[prev] += list[k].second;
        continue;
      }
      int w = n++;
      SkeletonEdge piece{prev, w, list[k].first - prev_off};
      if (first) {
        edges[e] = piece;
        first = false;
      } else {
        edges.push_back(piece);
      }
      by_vertex[w] += list[k].second;
      prev = w;
      prev_off = list[k].first;
    }
    edges.push_back({prev, old.v, old.length - prev_off});
  }
  std::vector<VertexAtom> merged;
  for (auto [v, m] : by_vertex) merged.push_back({v, m});
  return MeasuredRealTree(RealTreeSkeleton(n, std::move(edges)), std::move(merged));
}

double MeasuredRealTree::mass_at(int v) const { return mass_by_vertex_[v]; }

std::vector<TreePoint> MeasuredRealTree::atom_points() const {
  std::vector<TreePoint> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(TreePoint::vertex(a.vertex));
  return out;
}

SamplingMeasure tau_exact(const MeasuredRealTree& m, int r, std::int64_t cap) {
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  const int k = static_cast<int>(m.atoms().size());
  std::int64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > cap / k) throw Error(ErrorCode::EnumerationTooLarge, "atom tuples exceed cap");
    total *= k;
  }
  if (total > cap) throw Error(ErrorCode::EnumerationTooLarge, "atom tuples exceed cap");
  std::vector<double> dist(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      dist[static_cast<std::size_t>(i) * k + j] =
          m.skeleton().vertex_distance(m.atoms()[i].vertex, m.atoms()[j].vertex);
  MeasureBuilder builder(r);
  std::vector<int> tuple(static_cast<std::size_t>(r), 0);
  do {
    double w = 1.0;
    for (int i : tuple) w *= m.atoms()[i].mass;
    std::vector<double> upper;
    upper.reserve(upper_size(r));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        upper.push_back(dist[static_cast<std::size_t>(tuple[i]) * k + tuple[j]]);
    builder.add(std::move(upper), w);
  } while (advance(tuple, k));
  return builder.finish_exact();
}

SamplingMeasure tau_sample(const MeasuredRealTree& m, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards) {
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  if (num_samples < 1) throw Error(ErrorCode::BadInput, "num_samples must be >= 1");
  std::vector<double> masses;
  for (const auto& a : m.atoms()) masses.push_back(a.mass);
  const WeightedPicker pick(masses);
  return sample_empirical(r, num_samples, seed, shards, [&](Engine& engine) {
    std::vector<int> tuple(static_cast<std::size_t>(r));
    for (auto& v : tuple) v = m.atoms()[pick(engine)].vertex;
    std::vector<double> upper;
    upper.reserve(upper_size(r));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        upper.push_back(m.skeleton().vertex_distance(tuple[i], tuple[j]));
    return upper;
  });
}

}  // namespace dendrolim
