#include "dendrolim/dendron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dendrolim {

namespace {

std::vector<TreePoint> support_points(const MeasureComponent& c) {
  if (const auto* p = std::get_if<PointBase>(&c.base)) return {p->point};
  const auto& s = std::get<SegmentBase>(c.base);
  return {s.from, s.to};
}

std::string describe(const TreePoint& p) {
  if (p.is_vertex()) return "vertex " + std::to_string(p.vertex_index());
  return "edge " + std::to_string(p.edge_index()) + " at offset " + std::to_string(p.offset());
}

}  // namespace

double MeasureComponent::max_height() const {
  if (const auto* f = std::get_if<FixedHeight>(&height)) return f->value;
  return std::get<UniformHeight>(height).hi;
}

FiniteDendron::FiniteDendron(RealTreeSkeleton skeleton, std::vector<MeasureComponent> components)
    : skeleton_(std::move(skeleton)), components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::InvalidComponent, "dendron has no components");
  for (std::size_t i = 0; i < components_.size(); ++i) {
    auto& c = components_[i];
    const std::string where = "component " + std::to_string(i);
    if (!std::isfinite(c.weight) || !(c.weight > 0.0))
      throw Error(ErrorCode::InvalidComponent, where + ": weight must be positive");
    if (auto* p = std::get_if<PointBase>(&c.base)) {
      p->point = skeleton_.canonical(p->point);
    } else {
      auto& s = std::get<SegmentBase>(c.base);
      s.from = skeleton_.canonical(s.from);
      s.to = skeleton_.canonical(s.to);
      if (skeleton_.distance(s.from, s.to) <= kPointEps)
        throw Error(ErrorCode::InvalidComponent, where + ": segment endpoints coincide");
    }
    if (const auto* f = std::get_if<FixedHeight>(&c.height)) {
      if (!std::isfinite(f->value) || f->value < 0.0)
        throw Error(ErrorCode::InvalidComponent, where + ": height must be >= 0");
    } else {
      const auto& u = std::get<UniformHeight>(c.height);
      if (!std::isfinite(u.lo) || !std::isfinite(u.hi) || u.lo < 0.0 || !(u.lo < u.hi))
        throw Error(ErrorCode::InvalidComponent, where + ": need 0 <= lo < hi");
    }
  }
}

bool FiniteDendron::is_atomic() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const MeasureComponent& c) { return c.is_atomic(); });
}

double d_D(const FiniteDendron& d, const MarkedPoint& x, const MarkedPoint& y) {
  if (!(x.height >= 0.0) || !(y.height >= 0.0))
    throw Error(ErrorCode::InvalidPoint, "marked point height must be >= 0");
  return d.skeleton().distance(x.base, y.base) + x.height + y.height;
}

Issues validate_dendron(const FiniteDendron& d) {
  Issues issues;
  double total = 0.0;
  for (const auto& c : d.components()) total += c.weight;
  if (std::abs(total - 1.0) > 1e-12)
    issues.push_back({ErrorCode::WeightsNotNormalized,
                      "component weights sum to " + std::to_string(total)});

  const auto& s = d.skeleton();
  std::vector<TreePoint> pts;
  for (const auto& c : d.components())
    for (const auto& p : support_points(c)) pts.push_back(p);
  Subtree span = minimal_spanning_subtree(s, pts);
  if (!span.is_whole(s)) {
    // witness: where the spanned part stops
    std::string witness;
    auto boundary = span.boundary_points(s);
    if (!boundary.empty()) {
      witness = describe(boundary.front());
    } else {
      for (int v = 0; v < s.vertex_count() && witness.empty(); ++v) {
        if (!span.has_vertex(v)) continue;
        for (int e : s.incident(v))
          if (!span.cover(e)) {
            witness = "vertex " + std::to_string(v) + " towards edge " + std::to_string(e);
            break;
          }
      }
    }
    issues.push_back({ErrorCode::BranchWithZeroMass, "branch at " + witness + " carries no mass"});
  }
  return issues;
}

double kernel_supremum(const FiniteDendron& d) {
  const auto& comps = d.components();
  double sup = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto pi = support_points(comps[i]);
    for (std::size_t j = i; j < comps.size(); ++j) {
      auto pj = support_points(comps[j]);
      double base = 0.0;
      for (const auto& a : pi)
        for (const auto& b : pj) base = std::max(base, d.skeleton().distance(a, b));
      sup = std::max(sup, base + comps[i].max_height() + comps[j].max_height());
    }
  }
  return sup;
}

bool is_dendron(const FiniteDendron& d) {
  throw_if_any(validate_dendron(d));
  return kernel_supremum(d) <= 1.0 + 1e-12;
}

namespace {

std::vector<double> component_weights(const FiniteDendron& d) {
  std::vector<double> w;
  for (const auto& c : d.components()) w.push_back(c.weight);
  return w;
}

}  // namespace

DendronSampler::DendronSampler(const FiniteDendron& d)
    : dendron_(&d), pick_(component_weights(d)) {
  for (const auto& c : d.components()) {
    if (const auto* s = std::get_if<SegmentBase>(&c.base)) {
      arcs_.push_back(d.skeleton().path(s->from, s->to));
      double len = 0.0;
      for (const auto& piece : arcs_.back()) len += piece.length();
      arc_lengths_.push_back(len);
    } else {
      arcs_.emplace_back();
      arc_lengths_.push_back(0.0);
    }
  }
}

MarkedPoint DendronSampler::operator()(Engine& engine) const {
  const int k = pick_(engine);
  const auto& c = dendron_->components()[k];
  MarkedPoint x;
  if (const auto* p = std::get_if<PointBase>(&c.base)) {
    x.base = p->point;
  } else {
    std::uniform_real_distribution<double> along(0.0, arc_lengths_[k]);
    double t = along(engine);
    const auto& arc = arcs_[k];
    x.base = std::get<SegmentBase>(c.base).to;
    for (const auto& piece : arc) {
      double len = piece.length();
      if (t <= len) {
        double off = piece.from < piece.to ? piece.from + t : piece.from - t;
        x.base = dendron_->skeleton().canonical(TreePoint::on_edge(piece.edge, off));
        break;
      }
      t -= len;
    }
  }
  if (const auto* f = std::get_if<FixedHeight>(&c.height)) {
    x.height = f->value;
  } else {
    const auto& u = std::get<UniformHeight>(c.height);
    x.height = std::uniform_real_distribution<double>(u.lo, u.hi)(engine);
  }
  return x;
}

MarkedPoint sample_marked_point(const FiniteDendron& d, Engine& engine) {
  return DendronSampler(d)(engine);
}

SamplingMeasure tau_sample(const FiniteDendron& d, int r, std::int64_t num_samples,
                           std::uint64_t seed, int shards) {
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  if (num_samples < 1) throw Error(ErrorCode::BadInput, "num_samples must be >= 1");
  throw_if_any(validate_dendron(d));
  const DendronSampler sampler(d);
  return sample_empirical(r, num_samples, seed, shards, [&](Engine& engine) {
    std::vector<MarkedPoint> xs;
    xs.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) xs.push_back(sampler(engine));
    std::vector<double> upper;
    upper.reserve(upper_size(r));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) upper.push_back(d_D(d, xs[i], xs[j]));
    return upper;
  });
}

SamplingMeasure tau_exact_atomic(const FiniteDendron& d, int r, std::int64_t cap) {
  if (r < 1) throw Error(ErrorCode::BadInput, "r must be >= 1");
  if (!d.is_atomic())
    throw Error(ErrorCode::NotAtomic, "exact enumeration needs point bases with fixed heights");
  throw_if_any(validate_dendron(d));
  const auto& comps = d.components();
  const int k = static_cast<int>(comps.size());
  std::int64_t total = 1;
  for (int i = 0; i < r; ++i) {
    if (total > cap / k) throw Error(ErrorCode::EnumerationTooLarge, "component tuples exceed cap");
    total *= k;
  }
  std::vector<MarkedPoint> atoms;
  for (const auto& c : comps)
    atoms.push_back({std::get<PointBase>(c.base).point, std::get<FixedHeight>(c.height).value});
  std::vector<double> kernel(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      kernel[static_cast<std::size_t>(i) * k + j] = d_D(d, atoms[i], atoms[j]);

  MeasureBuilder builder(r);
  std::vector<int> tuple(static_cast<std::size_t>(r), 0);
  for (std::int64_t step = 0; step < total; ++step) {
    double w = 1.0;
    for (int i : tuple) w *= comps[i].weight;
    std::vector<double> upper;
    upper.reserve(upper_size(r));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        upper.push_back(kernel[static_cast<std::size_t>(tuple[i]) * k + tuple[j]]);
    builder.add(std::move(upper), w);
    for (int pos = r - 1; pos >= 0; --pos) {
      if (++tuple[pos] < k) break;
      tuple[pos] = 0;
    }
  }
  return builder.finish_exact();
}

}  // namespace dendrolim
