#pragma once

#include "dendrolim/dendron.hpp"
#include "dendrolim/finite_tree.hpp"

namespace dendrolim {

/// Path P_n on vertices 0..n-1. n >= 2.
FiniteTree gen_path(int n);
/// Star K_{1,n-1} with center 0. n >= 3.
FiniteTree gen_star(int n);
/// Complete binary tree with 2^h - 1 vertices, heap-indexed (children of v
/// are 2v+1, 2v+2). h >= 2.
FiniteTree gen_binary(int h);
/// B_n with every edge between depths k-1 and k replaced by a path of
/// floor(n^2 / k^2) edges. n >= 2.
FiniteTree gen_stretched_binary(int n);
/// Spine P_n with a path of n-1 new vertices hung at every spine vertex
/// (n^2 vertices). n >= 2.
FiniteTree gen_comb(int n);
/// Root 0 with children P_1..P_n, where P_i has 2^i leaf children. n >= 2.
FiniteTree gen_deep2(int n);

/// Unit segment, uniform base, height 0.
FiniteDendron limit_path();
/// One point p carrying all mass at height 1/2.
FiniteDendron limit_star();
/// Segment of length 1/3, uniform base times uniform height on [0, 1/3].
FiniteDendron limit_comb();

/// Finite stand-in for an infinite limit. `truncation_error` bounds what was
/// cut: the largest kernel displacement for the stretched binary limit, the
/// discarded tail mass for the depth-two limit.
struct TruncatedLimit {
  FiniteDendron dendron;
  double truncation_error = 0.0;
};

/// Edge lengths C/i^2 at level i with C = 1 / (2 sum 1/i^2) = 3/pi^2, so the
/// boundary sits at distance 1/2 from the root. Depth k keeps 2^k tips, each
/// an atom of weight 2^-k at height 1/2 - depth(tip).
inline constexpr double kStretchedConstant = 0.30396355092701331;  // 3 / pi^2
TruncatedLimit limit_stretched_binary(int depth_k);

/// Star of arm_k arms of length 1/4 with atoms (p_i, 1/4) of weight 2^-i,
/// renormalized. For arm_k = 1 the single arm carries no branch mass and is
/// dropped: one point with the atom at height 1/4.
TruncatedLimit limit_deep2(int arm_k);

}  // namespace dendrolim
