#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace dendrolim {

/// Symmetric r x r matrix with a zero diagonal, stored as its strict upper
/// triangle in row-major order: (0,1), (0,2), ..., (0,r-1), (1,2), ...
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  /// Zero matrix of the given order.
  explicit DistanceMatrix(int order);

  /// Takes ownership of an upper-triangle vector of length order*(order-1)/2.
  /// Entries must be finite and nonnegative.
  static DistanceMatrix from_upper(int order, std::vector<double> upper);

  /// Validates a full row-major matrix: exact zero diagonal, symmetric,
  /// nonnegative, finite. Throws Error(InvalidMatrix).
  static DistanceMatrix from_full(int order, std::span<const double> entries);

  int order() const noexcept { return order_; }
  double at(int i, int j) const;
  void set(int i, int j, double value);

  const std::vector<double>& upper() const noexcept { return upper_; }
  double max_entry() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  int order_ = 0;
  std::vector<double> upper_;
};

std::size_t upper_size(int order);
std::size_t upper_index(int order, int i, int j);

enum class MeasureKind { Exact, Empirical };

struct MeasureAtom {
  DistanceMatrix matrix;
  double weight = 0.0;
};

/// A finitely supported probability measure on r x r matrices: either the
/// exact push-forward of a finite product measure or an empirical measure of
/// i.i.d. draws.
struct SamplingMeasure {
  int order = 0;
  MeasureKind kind = MeasureKind::Exact;
  std::int64_t sample_count = 0;  // empirical only
  // exact only, 0 if unknown: every weight is a whole multiple of 1/denominator
  std::int64_t denominator = 0;
  std::vector<MeasureAtom> atoms;

  double total_weight() const;
};

/// Checks the SamplingMeasure invariants: common order, positive weights,
/// total weight 1 within 1e-12, zero diagonal and symmetry (structural).
void check_measure(const SamplingMeasure& m);

/// Collects weighted matrices keyed by exact entry equality.
class MeasureBuilder {
 public:
  explicit MeasureBuilder(int order) : order_(order) {}

  void add(std::vector<double> upper, double weight);
  void add_count(std::vector<double> upper, std::int64_t count);

  /// Exact measure; weights used as given.
  SamplingMeasure finish_exact() const;
  /// Empirical measure; counts divided by total.
  SamplingMeasure finish_empirical() const;

  void merge_counts(const MeasureBuilder& other);

 private:
  int order_;
  std::map<std::vector<double>, double> weights_;
  std::map<std::vector<double>, std::int64_t> counts_;
};

/// Atoms linked by chains of entrywise tol-closeness are merged into the
/// lexicographically smallest one; output is in lexicographic order.
SamplingMeasure canonicalize(const SamplingMeasure& m, double tol);

/// Equality as weighted multisets: both measures are clustered together as
/// in canonicalize and every cluster must carry the same weight (within tol)
/// on both sides.
bool measures_equal(const SamplingMeasure& a, const SamplingMeasure& b, double tol);

}  // namespace dendrolim
