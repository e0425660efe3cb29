#include "dendrolim/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dendrolim {

namespace {

void require_same_order(int a, int b) {
  if (a != b)
    throw Error(ErrorCode::OrderMismatch,
                "orders differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

// Lexicographic order on measures, used to fix the operand order.
bool measure_less(const SamplingMeasure& a, const SamplingMeasure& b) {
  if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    const auto& x = a.atoms[i];
    const auto& y = b.atoms[i];
    if (x.matrix.upper() != y.matrix.upper()) return x.matrix.upper() < y.matrix.upper();
    if (x.weight != y.weight) return x.weight < y.weight;
  }
  return false;
}

constexpr int kBlocks = 64;

// sum_i sum_j w_i v_j |a_i - b_j|, rows split into kBlocks fixed blocks.
double cross_term(const SamplingMeasure& p, const SamplingMeasure& q, int threads) {
  const std::size_t rows = p.atoms.size();
  std::vector<double> partial(kBlocks, 0.0);
  auto block = [&](int b) {
    std::size_t lo = rows * b / kBlocks, hi = rows * (b + 1) / kBlocks;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& x = p.atoms[i];
      double row = 0.0;
      for (const auto& y : q.atoms) row += y.weight * euclid(x.matrix.upper(), y.matrix.upper());
      acc += x.weight * row;
    }
    partial[b] = acc;
  };
  threads = std::clamp(threads, 1, kBlocks);
  if (threads == 1) {
    for (int b = 0; b < kBlocks; ++b) block(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int b = t; b < kBlocks; b += threads) block(b);
      });
    for (auto& th : pool) th.join();
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

// 1-D case: 2 * integral of (F - G)^2.
double energy_1d(const SamplingMeasure& p, const SamplingMeasure& q) {
  std::vector<std::pair<double, double>> events;  // (value, signed weight)
  events.reserve(p.atoms.size() + q.atoms.size());
  const double tp = p.total_weight(), tq = q.total_weight();
  for (const auto& a : p.atoms) events.push_back({a.matrix.upper()[0], a.weight / tp});
  for (const auto& a : q.atoms) events.push_back({a.matrix.upper()[0], -a.weight / tq});
  std::sort(events.begin(), events.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return std::abs(x.second) < std::abs(y.second) ||
           (std::abs(x.second) == std::abs(y.second) && x.second < y.second);
  });
  double fp = 0.0, fq = 0.0, integral = 0.0;
  for (std::size_t k = 0; k < events.size(); ++k) {
    if (events[k].second > 0)
      fp += events[k].second;
    else
      fq -= events[k].second;
    if (k + 1 < events.size() && events[k + 1].first > events[k].first) {
      double diff = fp - fq;
      integral += diff * diff * (events[k + 1].first - events[k].first);
    }
  }
  return 2.0 * integral;
}

}  // namespace

double matrix_metric(const DistanceMatrix& a, const DistanceMatrix& b) {
  require_same_order(a.order(), b.order());
  return euclid(a.upper(), b.upper());
}

double energy_distance(const SamplingMeasure& p, const SamplingMeasure& q, int threads) {
  require_same_order(p.order, q.order);
  if (p.atoms.empty() || q.atoms.empty())
    throw Error(ErrorCode::BadInput, "energy distance needs non-empty measures");
  if (p.order < 2) return 0.0;
  if (p.order == 2) return energy_1d(p, q);
  const bool swap = measure_less(q, p);
  const SamplingMeasure& a = swap ? q : p;
  const SamplingMeasure& b = swap ? p : q;
  const double ta = a.total_weight(), tb = b.total_weight();
  double cross = cross_term(a, b, threads) / (ta * tb);
  double self_a = cross_term(a, a, threads) / (ta * ta);
  double self_b = cross_term(b, b, threads) / (tb * tb);
  return std::max(0.0, 2.0 * cross - (self_a + self_b));
}

double mean_offdiag(const SamplingMeasure& p) {
  if (p.order < 2)
    throw Error(ErrorCode::OrderMismatch, "mean_offdiag needs order >= 2");
  // with a known common denominator, weigh by whole counts and divide once
  const std::int64_t den = p.kind == MeasureKind::Exact ? p.denominator : p.sample_count;
  const long double pairs = static_cast<long double>(upper_size(p.order));
  long double num = 0.0L, total = 0.0L;
  for (const auto& a : p.atoms) {
    long double s = 0.0L;
    for (double v : a.matrix.upper()) s += v;
    long double w = den > 0 ? std::round(static_cast<long double>(a.weight) * den) : a.weight;
    num += w * s;
    total += w;
  }
  return static_cast<double>(num / (total * pairs));
}

double region_mass(const FiniteDendron& d, const Region& h) {
  if (std::isnan(h.lo) || std::isnan(h.hi) || h.lo > h.hi)
    throw Error(ErrorCode::UnsupportedRegion, "height interval must satisfy lo <= hi");
  const auto& s = d.skeleton();
  double total = 0.0;
  for (const auto& c : d.components()) {
    double base = 0.0;
    if (const auto* p = std::get_if<PointBase>(&c.base)) {
      base = h.base.contains(s, p->point) ? 1.0 : 0.0;
    } else {
      const auto& seg = std::get<SegmentBase>(c.base);
      auto arc = s.path(seg.from, seg.to);
      double len = 0.0;
      for (const auto& piece : arc) len += piece.length();
      base = std::min(1.0, h.base.overlap_length(arc) / len);
    }
    double height = 0.0;
    if (const auto* f = std::get_if<FixedHeight>(&c.height)) {
      height = (f->value >= h.lo && f->value <= h.hi) ? 1.0 : 0.0;
    } else {
      const auto& u = std::get<UniformHeight>(c.height);
      double overlap = std::min(u.hi, h.hi) - std::max(u.lo, h.lo);
      height = std::max(0.0, overlap) / (u.hi - u.lo);
    }
    total += c.weight * base * height;
  }
  return total;
}

ObeysReport obeys_check(const std::vector<MarkedPoint>& points, const FiniteDendron& d,
                        const Region& h, double tolerance) {
  ObeysReport r;
  r.nu = region_mass(d, h);
  if (points.empty()) throw Error(ErrorCode::BadInput, "no sample points");
  std::size_t inside = 0;
  for (const auto& x : points)
    if (x.height >= h.lo && x.height <= h.hi && h.base.contains(d.skeleton(), x.base)) ++inside;
  r.frequency = static_cast<double>(inside) / static_cast<double>(points.size());
  r.pass = std::abs(r.frequency - r.nu) <= tolerance;
  return r;
}

}  // namespace dendrolim
