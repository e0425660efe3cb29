#include "dendrolim/core.hpp"

#include <map>
#include <string>

namespace dendrolim {

namespace {

// Mass in the rooted subtree of each vertex (vertex included).
std::vector<double> subtree_masses(const MeasuredRealTree& m) {
  const auto& idx = m.skeleton().index();
  std::vector<double> sm(static_cast<std::size_t>(m.skeleton().vertex_count()), 0.0);
  for (const auto& a : m.atoms()) sm[a.vertex] = a.mass;
  const auto& order = idx.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (idx.parent(*it) >= 0) sm[idx.parent(*it)] += sm[*it];
  return sm;
}

double total_mass(const MeasuredRealTree& m) {
  double t = 0.0;
  for (const auto& a : m.atoms()) t += a.mass;
  return t;
}

}  // namespace

BranchReport branch_masses_at(const MeasuredRealTree& m, const TreePoint& p_in) {
  const auto& s = m.skeleton();
  const auto& idx = s.index();
  TreePoint p = s.canonical(p_in);
  auto sm = subtree_masses(m);
  const double total = total_mass(m);
  BranchReport report;
  if (p.is_vertex()) {
    int v = p.vertex_index();
    report.point_mass = m.mass_at(v);
    for (int e : s.incident(v)) {
      int w = s.other_end(e, v);
      double mass = idx.parent_edge(v) == e ? total - sm[v] : sm[w];
      report.branches.push_back({e, w, mass});
    }
  } else {
    int e = p.edge_index();
    const auto& ed = s.edge(e);
    int child = idx.parent_edge(ed.u) == e ? ed.u : ed.v;
    int parent = s.other_end(e, child);
    report.branches.push_back({e, child, sm[child]});
    report.branches.push_back({e, parent, total - sm[child]});
  }
  return report;
}

bool is_inner(const MeasuredRealTree& m, const TreePoint& p) {
  for (const auto& b : branch_masses_at(m, p).branches)
    if (b.mass >= 1.0 - 1e-12) return false;
  return true;
}

Subtree core(const MeasuredRealTree& m) {
  auto pts = m.atom_points();
  return minimal_spanning_subtree(m.skeleton(), pts);
}

std::vector<Feather> feathers(const MeasuredRealTree& m) {
  const auto& s = m.skeleton();
  Subtree y = core(m);
  std::vector<Feather> out;
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!y.has_vertex(v)) continue;
    for (int e : s.incident(v)) {
      if (y.cover(e)) continue;
      Feather f;
      f.attachment = TreePoint::vertex(v);
      f.first_edge = e;
      // walk away from the core
      std::vector<std::pair<int, int>> stack{{e, s.other_end(e, v)}};
      while (!stack.empty()) {
        auto [edge, w] = stack.back();
        stack.pop_back();
        f.edges.push_back(edge);
        for (int next : s.incident(w))
          if (next != edge) stack.push_back({next, s.other_end(next, w)});
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

MarkedPoint associated_projection(const MeasuredRealTree& m, const Subtree& core_tree,
                                  const TreePoint& p) {
  const auto& s = m.skeleton();
  TreePoint base = retract(s, core_tree, p);
  return {base, s.distance(p, base)};
}

AssociatedDendron associated_dendron(const MeasuredRealTree& m) {
  const auto& s = m.skeleton();
  Subtree y = core(m);
  std::vector<MarkedPoint> projected;
  std::vector<TreePoint> bases;
  for (const auto& a : m.atoms()) {
    projected.push_back(associated_projection(m, y, TreePoint::vertex(a.vertex)));
    bases.push_back(projected.back().base);
  }
  auto extracted = extract_subtree(s, y, bases);

  std::map<std::pair<int, double>, double> merged;
  std::vector<ProjectedAtom> report;
  for (std::size_t i = 0; i < m.atoms().size(); ++i) {
    int id = extracted.mark_vertex[i];
    double h = projected[i].height;
    merged[{id, h}] += m.atoms()[i].mass;
    report.push_back({m.atoms()[i].vertex, {TreePoint::vertex(id), h}, m.atoms()[i].mass});
  }
  std::vector<MeasureComponent> comps;
  for (const auto& [key, w] : merged)
    comps.push_back({w, PointBase{TreePoint::vertex(key.first)}, FixedHeight{key.second}});
  return {FiniteDendron(extracted.skeleton, std::move(comps)), extracted.vertex_map,
          std::move(report)};
}

}  // namespace dendrolim
