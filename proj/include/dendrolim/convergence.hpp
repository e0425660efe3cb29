#pragma once

#include <limits>
#include <vector>

#include "dendrolim/dendron.hpp"
#include "dendrolim/real_tree.hpp"
#include "dendrolim/sampling_measure.hpp"

namespace dendrolim {

/// Euclidean distance between the upper triangles. Throws OrderMismatch.
double matrix_metric(const DistanceMatrix& a, const DistanceMatrix& b);

/// Energy distance 2 E m(X,Y) - E m(X,X') - E m(Y,Y') over the weighted
/// atoms, with m the Euclidean metric on upper triangles (V-statistic).
/// Exactly symmetric in its arguments and independent of `threads`.
/// Throws OrderMismatch, or BadInput for an empty measure.
double energy_distance(const SamplingMeasure& p, const SamplingMeasure& q, int threads = 1);

/// Weighted mean of the off-diagonal entries. Throws OrderMismatch if the
/// order is below 2.
double mean_offdiag(const SamplingMeasure& p);

/// Base set times a closed height interval.
struct Region {
  Subtree base;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

struct ObeysReport {
  double frequency = 0.0;
  double nu = 0.0;
  bool pass = false;
};

/// Empirical frequency of `points` in the region against its exact nu-mass.
/// Throws UnsupportedRegion for an empty or NaN height interval.
ObeysReport obeys_check(const std::vector<MarkedPoint>& points, const FiniteDendron& d,
                        const Region& h, double tolerance);

/// Exact nu-mass of a region.
double region_mass(const FiniteDendron& d, const Region& h);

}  // namespace dendrolim
