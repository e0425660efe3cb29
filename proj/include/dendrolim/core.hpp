#pragma once

#include <vector>

#include "dendrolim/dendron.hpp"
#include "dendrolim/real_tree.hpp"

namespace dendrolim {

/// One direction out of a point. At a vertex, `edge` is the incident edge the
/// branch starts with; at an edge interior, `toward` is the endpoint on the
/// branch's side.
struct Branch {
  int edge = -1;
  int toward = -1;
  double mass = 0.0;
};

struct BranchReport {
  std::vector<Branch> branches;
  double point_mass = 0.0;
};

BranchReport branch_masses_at(const MeasuredRealTree& m, const TreePoint& p);

/// No branch at p carries all of the mass.
bool is_inner(const MeasuredRealTree& m, const TreePoint& p);

/// Closure of the inner points. For atomic measures this is the minimal
/// subtree spanning the atoms.
Subtree core(const MeasuredRealTree& m);

/// A connected component of T minus the core: the branch at `attachment`
/// (a core vertex) that starts with `first_edge` and consists of `edges`.
struct Feather {
  TreePoint attachment = TreePoint::vertex(0);
  int first_edge = -1;
  std::vector<int> edges;
};

std::vector<Feather> feathers(const MeasuredRealTree& m);

/// Where an atom of the tree lands in the associated dendron.
struct ProjectedAtom {
  int tree_vertex = 0;
  MarkedPoint marked;  // on the dendron's skeleton
  double mass = 0.0;
};

struct AssociatedDendron {
  FiniteDendron dendron;
  /// Core vertex index in the dendron skeleton for each tree vertex in the
  /// core, -1 otherwise.
  std::vector<int> core_vertex;
  std::vector<ProjectedAtom> projection;
};

/// alpha(p) = (retraction of p onto the core, distance to the core).
MarkedPoint associated_projection(const MeasuredRealTree& m, const Subtree& core_tree,
                                  const TreePoint& p);

/// The core as the dendron's tree with nu the push-forward of mu under the
/// associated projection; coincident marked points are merged.
AssociatedDendron associated_dendron(const MeasuredRealTree& m);

}  // namespace dendrolim
