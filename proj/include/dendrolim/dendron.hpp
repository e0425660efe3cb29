#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dendrolim/error.hpp"
#include "dendrolim/real_tree.hpp"
#include "dendrolim/rng.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

/// A point (u, a) of T x [0, inf): base point u on the tree, height a.
struct MarkedPoint {
  TreePoint base = TreePoint::vertex(0);
  double height = 0.0;
};

struct PointBase {
  TreePoint point;
};

/// Uniform (by length) along the arc [from, to].
struct SegmentBase {
  TreePoint from;
  TreePoint to;
};

struct FixedHeight {
  double value = 0.0;
};

/// Uniform on [lo, hi].
struct UniformHeight {
  double lo = 0.0;
  double hi = 0.0;
};

using BaseSupport = std::variant<PointBase, SegmentBase>;
using HeightSupport = std::variant<FixedHeight, UniformHeight>;

/// One product-shaped piece of the mixture measure nu.
struct MeasureComponent {
  double weight = 0.0;
  BaseSupport base;
  HeightSupport height;

  bool is_atomic() const {
    return std::holds_alternative<PointBase>(base) && std::holds_alternative<FixedHeight>(height);
  }
  double max_height() const;
};

/// Finite real tree with a probability measure on T x [0, inf) given as a
/// finite mixture of point/segment bases times fixed/uniform heights.
///
/// The constructor checks component shapes (positive weights, distinct
/// segment endpoints, nonnegative ordered heights, valid points) and
/// canonicalizes points; weight normalization and branch positivity are
/// reported by validate_dendron.
class FiniteDendron {
 public:
  FiniteDendron(RealTreeSkeleton skeleton, std::vector<MeasureComponent> components);

  const RealTreeSkeleton& skeleton() const noexcept { return skeleton_; }
  const std::vector<MeasureComponent>& components() const noexcept { return components_; }
  bool is_atomic() const;

 private:
  RealTreeSkeleton skeleton_;
  std::vector<MeasureComponent> components_;
};

/// The kernel d(u, v) + a + b. Not a metric: d_D(x, x) = 2a.
double d_D(const FiniteDendron& d, const MarkedPoint& x, const MarkedPoint& y);

/// Weight normalization (1e-12) and branch positivity: every branch of the
/// skeleton must receive positive mass, i.e. the spanning subtree of all
/// base supports is the whole skeleton.
Issues validate_dendron(const FiniteDendron& d);

/// Supremum of d_D over the closed supports of all component pairs.
double kernel_supremum(const FiniteDendron& d);

/// True if d_D <= 1 (+1e-12) almost surely. Throws if validation fails.
bool is_dendron(const FiniteDendron& d);

/// Draws marked points from nu. Immutable and shareable across threads.
class DendronSampler {
 public:
  explicit DendronSampler(const FiniteDendron& d);
  MarkedPoint operator()(Engine& engine) const;

 private:
  const FiniteDendron* dendron_;
  WeightedPicker pick_;
  std::vector<std::vector<PathPiece>> arcs_;  // per component; empty for point bases
  std::vector<double> arc_lengths_;
};

MarkedPoint sample_marked_point(const FiniteDendron& d, Engine& engine);

/// Monte-Carlo tau_r(D) with the kernel d_D and forced zero diagonal.
SamplingMeasure tau_sample(const FiniteDendron& d, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards = 1);

/// Exact tau_r(D) for purely atomic dendrons by enumerating component tuples.
/// Throws NotAtomic or EnumerationTooLarge.
SamplingMeasure tau_exact_atomic(const FiniteDendron& d, int r,
                                 std::int64_t cap = kDefaultEnumerationCap);

}  // namespace dendrolim
