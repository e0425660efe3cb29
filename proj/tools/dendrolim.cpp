#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dendrolim/convergence.hpp"
#include "dendrolim/core.hpp"
#include "dendrolim/discretize.hpp"
#include "dendrolim/families.hpp"
#include "dendrolim/io.hpp"
#include "dendrolim/reconstruct.hpp"

#ifndef DENDROLIM_VERSION
#define DENDROLIM_VERSION "0.0.0"
#endif

using namespace dendrolim;
using io::json;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_text(out, text);
}

void emit(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

struct Options {
  int threads = 1;
  std::string input, out, a, b, report, name;
  int r = 2;
  std::int64_t num_samples = 10000;
  std::int64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  int n = 0;
  std::optional<int> depth;
  bool limit = false;
};

int run_sample(const Options& o) {
  auto j = io::read_json(o.input);
  SamplingMeasure m;
  switch (io::detect_kind(j)) {
    case io::InputKind::FiniteTree:
      m = tau_sample(io::finite_tree_from_json(j), o.r, o.num_samples, o.seed, o.threads);
      break;
    case io::InputKind::MeasuredTree:
      m = tau_sample(io::measured_tree_from_json(j), o.r, o.num_samples, o.seed, o.threads);
      break;
    case io::InputKind::Dendron:
      m = tau_sample(io::dendron_from_json(j), o.r, o.num_samples, o.seed, o.threads);
      break;
  }
  emit(o.out, io::measure_to_csv(m));
  return 0;
}

int run_exact(const Options& o) {
  auto j = io::read_json(o.input);
  SamplingMeasure m;
  switch (io::detect_kind(j)) {
    case io::InputKind::FiniteTree:
      m = tau_exact(io::finite_tree_from_json(j), o.r, o.cap);
      break;
    case io::InputKind::MeasuredTree:
      m = tau_exact(io::measured_tree_from_json(j), o.r, o.cap);
      break;
    case io::InputKind::Dendron:
      m = tau_exact_atomic(io::dendron_from_json(j), o.r, o.cap);
      break;
  }
  emit(o.out, io::measure_to_csv(m));
  return 0;
}

int run_compare(const Options& o) {
  auto p = io::measure_from_csv(io::read_text(o.a));
  auto q = io::measure_from_csv(io::read_text(o.b));
  double ed = energy_distance(p, q, o.threads);
  json mean = json::array();
  if (p.order >= 2 && q.order == p.order)
    mean = {mean_offdiag(p), mean_offdiag(q)};
  json report = {{"r", p.order},
                 {"energy_distance", ed},
                 {"mean_offdiag", mean},
                 {"n_atoms", {p.atoms.size(), q.atoms.size()}}};
  emit(o.out, report);
  return 0;
}

int run_reconstruct(const Options& o) {
  auto a = io::matrix_from_csv(io::read_text(o.input));
  emit(o.out, io::to_json(build_a_tree(a)));
  return 0;
}

int run_core(const Options& o) {
  auto m = io::measured_tree_from_json(io::read_json(o.input));
  emit(o.out, io::to_json(associated_dendron(m).dendron));
  return 0;
}

int run_discretize(const Options& o) {
  auto m = io::measured_tree_from_json(io::read_json(o.input));
  auto r = realize(m, o.n);
  emit(o.out, io::to_json(r.tree));
  if (!o.report.empty()) emit(o.report, io::report_json(r));
  return 0;
}

int run_example(const Options& o) {
  const std::string& name = o.name;
  if (o.limit) {
    if (name == "path") return emit(o.out, io::to_json(limit_path())), 0;
    if (name == "star" || name == "binary") return emit(o.out, io::to_json(limit_star())), 0;
    if (name == "comb") return emit(o.out, io::to_json(limit_comb())), 0;
    if (name == "stretched-binary")
      return emit(o.out, io::to_json(limit_stretched_binary(o.depth.value_or(8)).dendron)), 0;
    if (name == "deep2")
      return emit(o.out, io::to_json(limit_deep2(o.depth.value_or(12)).dendron)), 0;
  } else {
    if (o.n == 0) throw Error(ErrorCode::BadInput, "--n is required for a generator");
    if (name == "path") return emit(o.out, io::to_json(gen_path(o.n))), 0;
    if (name == "star") return emit(o.out, io::to_json(gen_star(o.n))), 0;
    if (name == "binary") return emit(o.out, io::to_json(gen_binary(o.n))), 0;
    if (name == "stretched-binary") return emit(o.out, io::to_json(gen_stretched_binary(o.n))), 0;
    if (name == "comb") return emit(o.out, io::to_json(gen_comb(o.n))), 0;
    if (name == "deep2") return emit(o.out, io::to_json(gen_deep2(o.n))), 0;
  }
  throw Error(ErrorCode::BadInput, "unknown example '" + name + "'");
}

int run_tdx(const Options& o) {
  auto d = io::dendron_from_json(io::read_json(o.input));
  throw_if_any(validate_dendron(d));
  if (o.n < 1) throw Error(ErrorCode::BadInput, "--n must be >= 1");
  auto engine = make_engine(o.seed);
  auto x = draw_n_sample(d, o.n, engine);
  emit(o.out, io::to_json(t_d_x(d, x)));
  if (!o.report.empty()) emit(o.report, io::to_json(x));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling limits of finite trees: dendrons, A-trees and discretization"};
  app.set_version_flag("--version", std::string("dendrolim ") + DENDROLIM_VERSION);
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "Sampling shards (default 1, reproducible)")
      ->check(CLI::Range(1, 256));

  auto* sample = app.add_subcommand("sample", "Monte-Carlo sampling measure");
  sample->add_option("--input", o.input, "Tree, measured tree or dendron JSON")->required();
  sample->add_option("--r", o.r, "Matrix order")->check(CLI::PositiveNumber);
  sample->add_option("--num-samples", o.num_samples, "Number of r-tuples");
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--out", o.out, "Output CSV (stdout if omitted)");

  auto* exact = app.add_subcommand("exact", "Exact sampling measure by enumeration");
  exact->add_option("--input", o.input, "Tree, measured tree or atomic dendron JSON")->required();
  exact->add_option("--r", o.r, "Matrix order")->check(CLI::PositiveNumber);
  exact->add_option("--cap", o.cap, "Maximum number of enumerated tuples");
  exact->add_option("--out", o.out, "Output CSV");

  auto* compare = app.add_subcommand("compare", "Energy distance between two measure CSVs");
  compare->add_option("--a", o.a, "First measure CSV")->required();
  compare->add_option("--b", o.b, "Second measure CSV")->required();
  compare->add_option("--out", o.out, "Output JSON report");

  auto* reconstruct = app.add_subcommand("reconstruct", "A-tree of a distance matrix");
  reconstruct->add_option("--matrix", o.input, "Square CSV matrix")->required();
  reconstruct->add_option("--out", o.out, "Output measured tree JSON");

  auto* core = app.add_subcommand("core", "Associated dendron of a measured real tree");
  core->add_option("--input", o.input, "Measured real tree JSON")->required();
  core->add_option("--out", o.out, "Output dendron JSON");

  auto* discretize = app.add_subcommand("discretize", "Graph tree approximating a measured tree");
  discretize->add_option("--input", o.input, "Measured real tree JSON")->required();
  discretize->add_option("--n", o.n, "Scale")->required();
  discretize->add_option("--out", o.out, "Output tree JSON");
  discretize->add_option("--report", o.report, "Leaf-class report JSON");

  auto* example = app.add_subcommand("example", "Example families and their limits");
  example->add_option("name", o.name, "path|star|binary|stretched-binary|comb|deep2")
      ->required()
      ->check(CLI::IsMember({"path", "star", "binary", "stretched-binary", "comb", "deep2"}));
  example->add_option("--n", o.n, "Size parameter");
  example->add_option("--depth", o.depth, "Truncation depth for infinite limits");
  example->add_flag("--limit", o.limit, "Emit the limit dendron instead");
  example->add_option("--out", o.out, "Output JSON");

  auto* tdx = app.add_subcommand("tdx", "Sample a dendron and build T^D_x");
  tdx->add_option("--dendron", o.input, "Dendron JSON")->required();
  tdx->add_option("--n", o.n, "Sample size")->required();
  tdx->add_option("--seed", o.seed, "Random seed");
  tdx->add_option("--out", o.out, "Output measured tree JSON");
  tdx->add_option("--sample-out", o.report, "Write the drawn marked points here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*sample) return run_sample(o);
    if (*exact) return run_exact(o);
    if (*compare) return run_compare(o);
    if (*reconstruct) return run_reconstruct(o);
    if (*core) return run_core(o);
    if (*discretize) return run_discretize(o);
    if (*example) return run_example(o);
    if (*tdx) return run_tdx(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
