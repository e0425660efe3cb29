// Measured real trees of diameter at most 1 shared by the discretization
// tests and the acceptance suite.
#pragma once

#include <vector>

#include "dendrolim/real_tree.hpp"

namespace corpus {

using namespace dendrolim;

inline std::vector<MeasuredRealTree> discretize_corpus() {
  std::vector<MeasuredRealTree> out;
  out.emplace_back(RealTreeSkeleton(2, {{0, 1, 1.0}}), std::vector<VertexAtom>{{0, 0.5}, {1, 0.5}});
  out.emplace_back(RealTreeSkeleton(1, {}), std::vector<VertexAtom>{{0, 1.0}});
  out.emplace_back(RealTreeSkeleton(4, {{0, 1, 0.5}, {0, 2, 0.3}, {0, 3, 0.2}}),
                   std::vector<VertexAtom>{{1, 0.5}, {2, 0.25}, {3, 0.25}});
  out.emplace_back(RealTreeSkeleton(4, {{0, 1, 0.25}, {1, 2, 0.25}, {2, 3, 0.5}}),
                   std::vector<VertexAtom>{{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}});
  out.emplace_back(RealTreeSkeleton(6, {{0, 1, 0.15}, {0, 2, 0.15}, {1, 3, 0.35}, {1, 4, 0.35},
                                        {2, 5, 0.35}}),
                   std::vector<VertexAtom>{{3, 0.25}, {4, 0.25}, {5, 0.25}, {0, 0.25}});
  // feather: vertex 3 carries no mass
  out.emplace_back(RealTreeSkeleton(4, {{0, 1, 0.3}, {1, 2, 0.3}, {1, 3, 0.4}}),
                   std::vector<VertexAtom>{{0, 0.6}, {2, 0.4}});
  return out;
}

}  // namespace corpus
