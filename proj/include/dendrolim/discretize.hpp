#pragma once

#include <map>
#include <vector>

#include "dendrolim/finite_tree.hpp"
#include "dendrolim/real_tree.hpp"

namespace dendrolim {

struct Realization {
  FiniteTree tree;
  /// Leaves hung at each atom vertex of the input, keyed by that vertex.
  std::map<int, std::vector<int>> leaf_classes;
  /// Hop diameter after edge expansion and leaves, before the extension path.
  int scaffold_diameter = 0;
  /// True if a path was attached to bring the diameter up to n.
  bool extended = false;
};

/// Graph tree approximating m at scale n. Skeleton vertex v keeps id v; edge
/// e becomes a path of ceil(a_e n) unit edges; atom v gets ceil(mu(v) n^2)
/// new leaves; if the diameter is still below n, a path is attached at an
/// end of a diameter path so that the diameter becomes exactly n.
///
/// Throws DiameterTooLarge if diam(m) > 1 + 1e-12, BadInput if n < 2.
Realization realize(const MeasuredRealTree& m, int n);

}  // namespace dendrolim
