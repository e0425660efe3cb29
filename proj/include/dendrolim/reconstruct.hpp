#pragma once

#include <vector>

#include "dendrolim/dendron.hpp"
#include "dendrolim/real_tree.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

/// n marked points of a dendron.
using NSample = std::vector<MarkedPoint>;

/// Realizes A as a measured real tree spanned by points q_1..q_n with
/// d(q_i, q_j) = A_ij and mass 1/n at each q_i (coincident points merge).
/// Points are inserted in index order; q_i branches off the partial tree at
/// Gromov-product depth (A_1i + A_1j - A_ij) / 2 along [q_1, q_j] for the
/// deepest j (lowest index on ties).
///
/// Throws NegativeGromovProduct, or NotATreeMetric when the built tree does
/// not reproduce A within 1e-9.
MeasuredRealTree build_a_tree(const DistanceMatrix& a);

/// Vertex of the built tree holding q_i, for each i.
struct ATree {
  MeasuredRealTree tree;
  std::vector<int> q_vertex;
};

ATree build_a_tree_with_points(const DistanceMatrix& a);

/// The measured tree T^D_x: the spanning subtree of the bases with an arc of
/// length a_i hung at p_i for each sample, uniform mass on the arc ends.
MeasuredRealTree t_d_x(const FiniteDendron& d, const NSample& x);

/// Off-diagonal d_D(x_i, x_j), zero diagonal.
DistanceMatrix rho_of_sample(const FiniteDendron& d, const NSample& x);

/// n i.i.d. draws from nu.
NSample draw_n_sample(const FiniteDendron& d, int n, Engine& engine);

/// True if some bijection of atoms preserves masses (1e-12) and pairwise
/// distances (1e-9). Both trees must be spanned by their atoms (else
/// NotSpanned) and carry at most 12 atoms (else TooManyAtoms).
bool measured_isometry_check(const MeasuredRealTree& m1, const MeasuredRealTree& m2);

/// True if the atoms span the whole tree.
bool spanned_by_atoms(const MeasuredRealTree& m);

}  // namespace dendrolim
