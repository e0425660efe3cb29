#include "dendrolim/sampling_measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dendrolim/error.hpp"

namespace dendrolim {

std::size_t upper_size(int order) {
  return order < 2 ? 0 : static_cast<std::size_t>(order) * (order - 1) / 2;
}

std::size_t upper_index(int order, int i, int j) {
  if (i > j) std::swap(i, j);
  // rows 0..i-1 contribute (order-1) + (order-2) + ... + (order-i) entries
  auto row_start = static_cast<std::size_t>(i) * (2 * order - i - 1) / 2;
  return row_start + static_cast<std::size_t>(j - i - 1);
}

DistanceMatrix::DistanceMatrix(int order) : order_(order), upper_(upper_size(order), 0.0) {
  if (order < 1) throw Error(ErrorCode::InvalidMatrix, "order must be >= 1");
}

DistanceMatrix DistanceMatrix::from_upper(int order, std::vector<double> upper) {
  if (order < 1) throw Error(ErrorCode::InvalidMatrix, "order must be >= 1");
  if (upper.size() != upper_size(order))
    throw Error(ErrorCode::InvalidMatrix, "upper triangle has wrong length");
  for (double v : upper)
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::InvalidMatrix, "entries must be finite and nonnegative");
  DistanceMatrix m;
  m.order_ = order;
  m.upper_ = std::move(upper);
  return m;
}

DistanceMatrix DistanceMatrix::from_full(int order, std::span<const double> entries) {
  if (order < 1) throw Error(ErrorCode::InvalidMatrix, "order must be >= 1");
  if (entries.size() != static_cast<std::size_t>(order) * order)
    throw Error(ErrorCode::InvalidMatrix, "expected " + std::to_string(order * order) + " entries");
  auto at = [&](int i, int j) { return entries[static_cast<std::size_t>(i) * order + j]; };
  DistanceMatrix m(order);
  for (int i = 0; i < order; ++i) {
    if (at(i, i) != 0.0)
      throw Error(ErrorCode::InvalidMatrix, "diagonal entry " + std::to_string(i) + " is not 0");
    for (int j = i + 1; j < order; ++j) {
      double a = at(i, j), b = at(j, i);
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
        throw Error(ErrorCode::InvalidMatrix, "entries must be finite and nonnegative");
      if (std::abs(a - b) > 1e-12)
        throw Error(ErrorCode::InvalidMatrix,
                    "not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      m.upper_[upper_index(order, i, j)] = a;
    }
  }
  return m;
}

double DistanceMatrix::at(int i, int j) const {
  if (i == j) return 0.0;
  return upper_[upper_index(order_, i, j)];
}

void DistanceMatrix::set(int i, int j, double value) {
  if (i == j) return;
  upper_[upper_index(order_, i, j)] = value;
}

double DistanceMatrix::max_entry() const {
  double m = 0.0;
  for (double v : upper_) m = std::max(m, v);
  return m;
}

double SamplingMeasure::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

void check_measure(const SamplingMeasure& m) {
  if (m.atoms.empty()) throw Error(ErrorCode::InvalidMeasure, "measure has no atoms");
  for (const auto& a : m.atoms) {
    if (a.matrix.order() != m.order)
      throw Error(ErrorCode::OrderMismatch, "atom order differs from measure order");
    if (!(a.weight > 0.0)) throw Error(ErrorCode::InvalidMeasure, "atom weight must be > 0");
  }
  if (std::abs(m.total_weight() - 1.0) > 1e-12)
    throw Error(ErrorCode::WeightsNotNormalized, "measure weights do not sum to 1");
}

void MeasureBuilder::add(std::vector<double> upper, double weight) {
  weights_[std::move(upper)] += weight;
}

void MeasureBuilder::add_count(std::vector<double> upper, std::int64_t count) {
  counts_[std::move(upper)] += count;
}

void MeasureBuilder::merge_counts(const MeasureBuilder& other) {
  for (const auto& [k, c] : other.counts_) counts_[k] += c;
}

SamplingMeasure MeasureBuilder::finish_exact() const {
  SamplingMeasure m;
  m.order = order_;
  m.kind = MeasureKind::Exact;
  m.atoms.reserve(weights_.size());
  for (const auto& [k, w] : weights_) m.atoms.push_back({DistanceMatrix::from_upper(order_, k), w});
  return m;
}

SamplingMeasure MeasureBuilder::finish_empirical() const {
  SamplingMeasure m;
  m.order = order_;
  m.kind = MeasureKind::Empirical;
  std::int64_t total = 0;
  for (const auto& [k, c] : counts_) total += c;
  m.sample_count = total;
  m.atoms.reserve(counts_.size());
  for (const auto& [k, c] : counts_)
    m.atoms.push_back({DistanceMatrix::from_upper(order_, k),
                       static_cast<double>(c) / static_cast<double>(total)});
  return m;
}

namespace {

struct Entry {
  const std::vector<double>* upper;
  double weight;
  int side;
};

bool within(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol) return false;
  return true;
}

// Groups entries whose matrices are linked by chains of entrywise
// tol-closeness. Returns the group id of each entry, groups numbered in
// lexicographic order of their smallest member; `entries` ends up sorted.
std::vector<int> cluster(std::vector<Entry>& entries, double tol) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return *a.upper < *b.upper; });
  const std::size_t n = entries.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // sweep on the first coordinate; candidates lie in a window of width tol
  std::vector<std::size_t> by_first(n);
  for (std::size_t i = 0; i < n; ++i) by_first[i] = i;
  auto first = [&](std::size_t i) { return entries[i].upper->empty() ? 0.0 : (*entries[i].upper)[0]; };
  std::sort(by_first.begin(), by_first.end(),
            [&](std::size_t a, std::size_t b) { return first(a) < first(b); });
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n && first(by_first[y]) - first(by_first[x]) <= tol; ++y) {
      std::size_t i = by_first[x], j = by_first[y];
      if (within(*entries[i].upper, *entries[j].upper, tol)) parent[find(i)] = find(j);
    }
  std::vector<int> group(n, -1), id_of_root(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (id_of_root[r] < 0) id_of_root[r] = next++;
    group[i] = id_of_root[r];
  }
  return group;
}

}  // namespace

SamplingMeasure canonicalize(const SamplingMeasure& m, double tol) {
  std::vector<Entry> entries;
  for (const auto& a : m.atoms) entries.push_back({&a.matrix.upper(), a.weight, 0});
  auto group = cluster(entries, tol);
  SamplingMeasure out;
  out.order = m.order;
  out.kind = m.kind;
  out.sample_count = m.sample_count;
  out.denominator = m.denominator;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (group[i] == static_cast<int>(out.atoms.size()))
      out.atoms.push_back({DistanceMatrix::from_upper(m.order, *entries[i].upper), 0.0});
    out.atoms[group[i]].weight += entries[i].weight;
  }
  return out;
}

bool measures_equal(const SamplingMeasure& a, const SamplingMeasure& b, double tol) {
  if (a.order != b.order) return false;
  std::vector<Entry> entries;
  for (const auto& x : a.atoms) entries.push_back({&x.matrix.upper(), x.weight, 0});
  for (const auto& x : b.atoms) entries.push_back({&x.matrix.upper(), x.weight, 1});
  auto group = cluster(entries, tol);
  int groups = 0;
  for (int g : group) groups = std::max(groups, g + 1);
  std::vector<double> wa(groups, 0.0), wb(groups, 0.0);
  for (std::size_t i = 0; i < entries.size(); ++i)
    (entries[i].side == 0 ? wa : wb)[group[i]] += entries[i].weight;
  for (int g = 0; g < groups; ++g)
    if (std::abs(wa[g] - wb[g]) > tol) return false;
  return true;
}

}  // namespace dendrolim
