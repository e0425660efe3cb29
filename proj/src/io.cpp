#include "dendrolim/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dendrolim::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadInput, what); }

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(std::string("malformed input: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& cell) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    bad("not a number: '" + cell + "'");
  }
  while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
  if (used != cell.size()) bad("not a number: '" + cell + "'");
  return v;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

json skeleton_json(const RealTreeSkeleton& s) {
  json edges = json::array();
  for (const auto& e : s.edges()) edges.push_back({e.u, e.v, e.length});
  return {{"n", s.vertex_count()}, {"edges", edges}};
}

RealTreeSkeleton skeleton_from(const json& j) {
  std::vector<SkeletonEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) bad("skeleton edge must be [u, v, length]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
  }
  return RealTreeSkeleton(j.at("n").get<int>(), std::move(edges));
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json read_json(const std::filesystem::path& path) {
  auto text = read_text(path);
  return guarded([&] { return json::parse(text); });
}

json to_json(const FiniteTree& t) {
  json edges = json::array();
  for (auto [u, v] : t.edges()) edges.push_back({u, v});
  return {{"n", t.vertex_count()}, {"edges", edges}};
}

FiniteTree finite_tree_from_json(const json& j) {
  return guarded([&] {
    std::vector<GraphEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) bad("tree edge must be [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return FiniteTree(j.at("n").get<int>(), std::move(edges));
  });
}

json to_json(const MeasuredRealTree& m) {
  json j = skeleton_json(m.skeleton());
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.vertex, a.mass});
  j["atoms"] = atoms;
  return j;
}

MeasuredRealTree measured_tree_from_json(const json& j) {
  return guarded([&] {
    std::vector<SkeletonEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) bad("edge must be [u, v, length]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    std::vector<VertexAtom> atoms;
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2) bad("atom must be [vertex, mass]");
      atoms.push_back({a[0].get<int>(), a[1].get<double>()});
    }
    std::vector<InteriorAtom> interior;
    if (j.contains("atoms_interior"))
      for (const auto& a : j.at("atoms_interior")) {
        if (!a.is_array() || a.size() != 3) bad("interior atom must be [edge, offset, mass]");
        interior.push_back({a[0].get<int>(), a[1].get<double>(), a[2].get<double>()});
      }
    return MeasuredRealTree::from_input(j.at("n").get<int>(), std::move(edges), std::move(atoms),
                                        std::move(interior));
  });
}

json to_json(const TreePoint& p) {
  if (p.is_vertex()) return {{"vertex", p.vertex_index()}};
  return {{"edge", {p.edge_index(), p.offset()}}};
}

TreePoint point_from_json(const json& j) {
  return guarded([&] {
    if (j.contains("vertex")) return TreePoint::vertex(j.at("vertex").get<int>());
    const auto& e = j.at("edge");
    if (!e.is_array() || e.size() != 2) bad("edge point must be {\"edge\": [e, offset]}");
    return TreePoint::on_edge(e[0].get<int>(), e[1].get<double>());
  });
}

json to_json(const FiniteDendron& d) {
  json comps = json::array();
  for (const auto& c : d.components()) {
    json base, height;
    if (const auto* p = std::get_if<PointBase>(&c.base)) {
      base = {{"point", to_json(p->point)}};
    } else {
      const auto& s = std::get<SegmentBase>(c.base);
      base = {{"segment", {to_json(s.from), to_json(s.to)}}};
    }
    if (const auto* f = std::get_if<FixedHeight>(&c.height)) {
      height = {{"fixed", f->value}};
    } else {
      const auto& u = std::get<UniformHeight>(c.height);
      height = {{"uniform", {u.lo, u.hi}}};
    }
    comps.push_back({{"weight", c.weight}, {"base", base}, {"height", height}});
  }
  return {{"skeleton", skeleton_json(d.skeleton())}, {"components", comps}};
}

FiniteDendron dendron_from_json(const json& j) {
  return guarded([&] {
    auto skeleton = skeleton_from(j.at("skeleton"));
    std::vector<MeasureComponent> comps;
    for (const auto& c : j.at("components")) {
      MeasureComponent m{0.0, PointBase{TreePoint::vertex(0)}, FixedHeight{0.0}};
      m.weight = c.at("weight").get<double>();
      const auto& b = c.at("base");
      if (b.contains("point")) {
        m.base = PointBase{point_from_json(b.at("point"))};
      } else {
        const auto& seg = b.at("segment");
        if (!seg.is_array() || seg.size() != 2) bad("segment must be [point, point]");
        m.base = SegmentBase{point_from_json(seg[0]), point_from_json(seg[1])};
      }
      const auto& h = c.at("height");
      if (h.contains("fixed")) {
        m.height = FixedHeight{h.at("fixed").get<double>()};
      } else {
        const auto& u = h.at("uniform");
        if (!u.is_array() || u.size() != 2) bad("uniform height must be [lo, hi]");
        m.height = UniformHeight{u[0].get<double>(), u[1].get<double>()};
      }
      comps.push_back(std::move(m));
    }
    return FiniteDendron(std::move(skeleton), std::move(comps));
  });
}

json to_json(const NSample& x) {
  json out = json::array();
  for (const auto& p : x) out.push_back({{"point", to_json(p.base)}, {"height", p.height}});
  return out;
}

json report_json(const Realization& r) {
  json classes = json::object();
  for (const auto& [v, leaves] : r.leaf_classes) classes[std::to_string(v)] = leaves;
  return {{"leaf_classes", classes}, {"scaffold_diameter", r.scaffold_diameter}};
}

InputKind detect_kind(const json& j) {
  if (!j.is_object()) bad("input must be a JSON object");
  if (j.contains("components")) return InputKind::Dendron;
  if (j.contains("atoms") || j.contains("atoms_interior")) return InputKind::MeasuredTree;
  if (j.contains("edges")) return InputKind::FiniteTree;
  bad("cannot tell what kind of object the input is");
}

std::string measure_to_csv(const SamplingMeasure& m) {
  std::string out = "weight";
  for (int i = 0; i < m.order; ++i)
    for (int j = i + 1; j < m.order; ++j)
      out += ",d_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  out += '\n';
  for (const auto& a : m.atoms) {
    out += format_double(a.weight);
    for (double v : a.matrix.upper()) out += "," + format_double(v);
    out += '\n';
  }
  return out;
}

SamplingMeasure measure_from_csv(const std::string& text) {
  auto lines = data_lines(text);
  if (lines.empty()) bad("empty measure file");
  auto header = split(lines[0], ',');
  if (header.empty() || header[0] != "weight") bad("measure header must start with 'weight'");
  const std::size_t cols = header.size() - 1;
  int order = 1;
  while (upper_size(order) < cols) ++order;
  if (upper_size(order) != cols) bad("column count is not r(r-1)/2");
  MeasureBuilder builder(order);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    auto cells = split(lines[k], ',');
    if (cells.size() != header.size())
      bad("row " + std::to_string(k) + " has " + std::to_string(cells.size()) + " cells");
    std::vector<double> upper;
    for (std::size_t c = 1; c < cells.size(); ++c) upper.push_back(parse_double(cells[c]));
    DistanceMatrix::from_upper(order, upper);
    double w = parse_double(cells[0]);
    if (!std::isfinite(w) || !(w > 0.0)) bad("row " + std::to_string(k) + ": weight must be > 0");
    builder.add(std::move(upper), w);
  }
  auto m = builder.finish_exact();
  if (m.atoms.empty()) bad("measure has no atoms");
  return m;
}

DistanceMatrix matrix_from_csv(const std::string& text) {
  auto lines = data_lines(text);
  const int r = static_cast<int>(lines.size());
  if (r == 0) bad("empty matrix file");
  std::vector<double> full;
  for (const auto& line : lines) {
    auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != r) bad("matrix must be square");
    for (const auto& c : cells) full.push_back(parse_double(c));
  }
  return DistanceMatrix::from_full(r, full);
}

}  // namespace dendrolim::io
