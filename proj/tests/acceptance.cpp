// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "dendrolim/convergence.hpp"
#include "dendrolim/core.hpp"
#include "dendrolim/discretize.hpp"
#include "dendrolim/families.hpp"
#include "dendrolim/io.hpp"
#include "dendrolim/reconstruct.hpp"
#include "oracles.hpp"

#ifndef DENDROLIM_CLI
#error "DENDROLIM_CLI must point at the command-line tool"
#endif
#ifndef FIXTURE_DIR
#error "FIXTURE_DIR must point at tests/fixtures"
#endif

using namespace dendrolim;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kCli = DENDROLIM_CLI;
const std::string kFixtures = FIXTURE_DIR;

struct Result {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Shell {
  int status = -1;
  std::string output;
};

Shell run(const std::string& args) {
  Shell s;
  std::string cmd = "\"" + kCli + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return s;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) s.output += buf.data();
  int raw = pclose(pipe);
  s.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return s;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

// 1-D energy distance between a discrete law and the law of |X - Y| for X, Y
// uniform on [0, 1] (cdf 2t - t^2). Integrates 2 (F - G)^2 exactly with
// 3-point Gauss-Legendre on each piece (the integrand is a quartic).
double energy_vs_interval(const SamplingMeasure& m) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& a : m.atoms) pts.push_back({a.matrix.at(0, 1), a.weight});
  std::sort(pts.begin(), pts.end());
  auto g = [](double t) { return 2 * t - t * t; };
  const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double weights[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
  double f = 0.0, total = 0.0, left = 0.0;
  std::size_t k = 0;
  while (left < 1.0) {
    while (k < pts.size() && pts[k].first <= left) f += pts[k++].second;
    double right = k < pts.size() ? std::min(1.0, pts[k].first) : 1.0;
    double half = (right - left) / 2, mid = (right + left) / 2;
    for (int i = 0; i < 3; ++i) {
      double d = f - g(mid + half * nodes[i]);
      total += weights[i] * half * d * d;
    }
    left = right;
  }
  return 2 * total;
}

SamplingMeasure point_mass_one() { return tau_exact_atomic(limit_star(), 2); }

struct NamedLimit {
  std::string name;
  FiniteDendron dendron;
};

std::vector<NamedLimit> example_limits() {
  return {{"path", limit_path()},
          {"star", limit_star()},
          {"binary", limit_star()},
          {"stretched-binary", limit_stretched_binary(8).dendron},
          {"comb", limit_comb()},
          {"deep2", limit_deep2(12).dendron}};
}

// ---------------------------------------------------------------------------

Result ac1() {
  Result r;
  auto check = [&](const std::string& file, const FiniteTree& t,
                   const std::vector<std::pair<double, double>>& expected) {
    auto t0 = Clock::now();
    auto out = run("exact --input " + fixture(file) + " --r 2");
    double secs = seconds_since(t0);
    r.require(out.status == 0, file + " exit " + std::to_string(out.status));
    if (out.status != 0) return;
    auto m = io::measure_from_csv(out.output);
    // independent enumeration over all ordered pairs
    auto hops = oracle::hop_matrix(t.vertex_count(), t.edges());
    std::vector<double> w(t.vertex_count(), 1.0 / t.vertex_count());
    auto brute = oracle::enumerate(t.vertex_count(), w, 2, [&](int i, int j) {
      return hops[i][j] / t.diameter();
    });
    r.require(brute.size() == expected.size(), file + " oracle support");
    for (const auto& [value, weight] : expected)
      r.require(brute[{value}] == weight, file + " oracle weight at " + std::to_string(value));
    r.require(m.atoms.size() == expected.size(), file + " atom count");
    for (std::size_t k = 0; k < m.atoms.size() && k < expected.size(); ++k) {
      r.require(m.atoms[k].matrix.at(0, 1) == expected[k].first, file + " value");
      r.require(m.atoms[k].weight == expected[k].second, file + " weight");
    }
    r.require(secs < 1.0, file + " runtime " + std::to_string(secs));
    r.detail << " " << file << " " << secs << "s;";
  };
  check("p3.json", gen_path(3), {{0.0, 1.0 / 3}, {0.5, 4.0 / 9}, {1.0, 2.0 / 9}});
  check("k13.json", gen_star(4), {{0.0, 1.0 / 4}, {0.5, 3.0 / 8}, {1.0, 3.0 / 8}});
  return r;
}

Result ac2() {
  Result r;
  auto t0 = Clock::now();
  auto list = io::read_json(fixture("measured_trees.json"));
  int count = 0, with_feathers = 0, max_atoms = 0;
  double worst = 0.0;
  for (const auto& j : list) {
    auto m = io::measured_tree_from_json(j);
    ++count;
    max_atoms = std::max(max_atoms, static_cast<int>(m.atoms().size()));
    if (!feathers(m).empty()) ++with_feathers;
    auto d = associated_dendron(m).dendron;
    for (int order : {2, 3}) {
      auto a = tau_exact(m, order);
      auto b = tau_exact_atomic(d, order);
      bool same = measures_equal(a, b, 1e-9);
      r.require(same, "tree " + std::to_string(count) + " r=" + std::to_string(order));
      auto ca = canonicalize(a, 1e-9), cb = canonicalize(b, 1e-9);
      if (ca.atoms.size() == cb.atoms.size())
        for (std::size_t k = 0; k < ca.atoms.size(); ++k) {
          worst = std::max(worst, std::abs(ca.atoms[k].weight - cb.atoms[k].weight));
          worst = std::max(worst, matrix_metric(ca.atoms[k].matrix, cb.atoms[k].matrix));
        }
    }
  }
  double secs = seconds_since(t0);
  r.require(count == 25, "fixture count " + std::to_string(count));
  r.require(max_atoms <= 8, "atom bound");
  r.require(with_feathers >= 10, "trees with feathers " + std::to_string(with_feathers));
  r.require(secs < 10.0, "runtime");
  r.detail << " trees=" << count << " with_feathers=" << with_feathers << " max_dev=" << worst
           << " " << secs << "s";
  return r;
}

Result ac3() {
  Result r;
  auto t0 = Clock::now();
  int total = 0, ok = 0;
  std::uint64_t stream = 0;
  for (const auto& lim : example_limits()) {
    auto engine = make_engine(3003, stream++);
    int here = 0;
    for (int trial = 0; trial < 200; ++trial) {
      int n = 2 + static_cast<int>(engine() % 7);
      auto x = draw_n_sample(lim.dendron, n, engine);
      bool same = false;
      try {
        same = measured_isometry_check(build_a_tree(rho_of_sample(lim.dendron, x)),
                                       t_d_x(lim.dendron, x));
      } catch (const Error& e) {
        r.detail << " " << lim.name << ": " << e.what();
      }
      ++total;
      ok += same;
      here += same;
    }
    r.require(here == 200, lim.name + " " + std::to_string(here) + "/200");
  }
  double secs = seconds_since(t0);
  r.require(secs < 30.0, "runtime");
  r.detail << " " << ok << "/" << total << " isometric, " << secs << "s";
  return r;
}

Result ac4() {
  Result r;
  for (int n : {4, 10, 50}) {
    auto m = tau_exact(gen_star(n), 2);
    double expected = static_cast<double>((n - 1) * (n - 1)) / (static_cast<double>(n) * n);
    double got = mean_offdiag(m);
    r.require(got == expected, "n=" + std::to_string(n) + " mean " + std::to_string(got));
    if (n <= 10) {
      auto t = gen_star(n);
      auto hops = oracle::hop_matrix(n, t.edges());
      double brute = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) brute += hops[i][j] / 2.0;
      brute /= static_cast<double>(n) * n;
      r.require(std::abs(brute - expected) <= 1e-15, "enumeration at n=" + std::to_string(n));
    }
    r.detail << " n=" << n << " mean=" << got << ";";
  }
  double e = energy_distance(tau_exact(gen_star(50), 2), point_mass_one());
  r.require(e < 0.06, "energy at n=50");
  r.detail << " energy(n=50)=" << e;
  return r;
}

Result ac5() {
  Result r;
  auto mc = tau_sample(limit_path(), 2, 100000, 505);
  double mean = mean_offdiag(mc);
  r.require(std::abs(mean - 1.0 / 3) <= 0.01, "Monte-Carlo mean");
  r.detail << " mc_mean=" << mean << " energy:";
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {5, 10, 20, 40}) {
    double e = energy_vs_interval(tau_exact(gen_path(n), 2));
    r.require(e < prev, "decrease at n=" + std::to_string(n));
    prev = e;
    r.detail << " n" << n << "=" << e;
  }
  return r;
}

Result ac6() {
  Result r;
  const auto limit = point_mass_one();
  double prev = std::numeric_limits<double>::infinity();
  r.detail << " energy:";
  for (int h : {4, 6, 8, 10}) {
    double e = energy_distance(tau_sample(gen_binary(h), 2, 100000, 600 + h), limit);
    r.require(e < prev, "decrease at h=" + std::to_string(h));
    prev = e;
    r.detail << " h" << h << "=" << e;
  }
  r.require(prev < 0.15, "h=10 below 0.15");
  return r;
}

Result ac7() {
  Result r;
  const std::int64_t samples = 100000;
  const double noise = 2.0 / std::sqrt(static_cast<double>(samples));
  std::uint64_t stream = 0;
  for (const auto& lim : example_limits()) {
    auto engine = make_engine(7007, stream++);
    auto x = draw_n_sample(lim.dendron, 200, engine);
    auto tree = t_d_x(lim.dendron, x);
    auto reference = tau_sample(lim.dendron, 2, samples, 7100 + stream);
    double prev = std::numeric_limits<double>::infinity();
    r.detail << " " << lim.name << ":";
    for (int n : {10, 20, 40, 80}) {
      auto t = realize(tree, n).tree;
      double e = energy_distance(tau_sample(t, 2, samples, 7200 + stream), reference);
      r.require(e <= prev + noise, lim.name + " rises at n=" + std::to_string(n));
      prev = e;
      r.detail << " " << e;
    }
    r.require(prev < 0.08, lim.name + " at n=80 is " + std::to_string(prev));
  }
  return r;
}

Result ac8() {
  Result r;
  auto t0 = Clock::now();
  auto comb = limit_comb();
  auto engine = make_engine(808);
  DendronSampler draw(comb);
  std::vector<MarkedPoint> xs;
  xs.reserve(100000);
  for (int i = 0; i < 100000; ++i) xs.push_back(draw(engine));
  auto rects = io::read_json(fixture("comb_rectangles.json"));
  int k = 0;
  for (const auto& rect : rects) {
    ++k;
    std::vector<TreePoint> ends{
        comb.skeleton().canonical(TreePoint::on_edge(0, rect.at("from").get<double>())),
        comb.skeleton().canonical(TreePoint::on_edge(0, rect.at("to").get<double>()))};
    Region h{minimal_spanning_subtree(comb.skeleton(), ends), rect.at("lo").get<double>(),
             rect.at("hi").get<double>()};
    auto rep = obeys_check(xs, comb, h, 0.01);
    r.require(rep.pass, "rectangle " + std::to_string(k));
    r.detail << " " << rep.frequency << "/" << rep.nu;
  }
  double secs = seconds_since(t0);
  r.require(k == 8, "rectangle count");
  r.require(secs < 5.0, "runtime");
  r.detail << " " << secs << "s";
  return r;
}

Result ac9() {
  Result r;
  struct Case {
    std::string name, args;
    int code;
  };
  const std::vector<Case> cases{
      {"BranchWithZeroMass", "sample --input " + fixture("zero_mass_branch.json") + " --r 2 --num-samples 10", 2},
      {"NotATreeMetric", "reconstruct --matrix " + fixture("four_cycle.csv"), 3},
      {"DiameterTooLarge", "discretize --input " + fixture("diameter_too_large.json") + " --n 10", 2},
      {"WeightsNotNormalized", "sample --input " + fixture("weights_not_normalized.json") + " --r 2 --num-samples 10", 2},
  };
  for (const auto& c : cases) {
    auto out = run(c.args);
    bool named = out.output.find(c.name) != std::string::npos;
    r.require(out.status == c.code && named,
              c.name + " exit " + std::to_string(out.status) + " output: " + out.output);
    r.detail << " " << c.name << "=" << out.status << ";";
  }
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"AC1 exact sampling oracle", ac1},
      {"AC2 tree and associated dendron share tau_r", ac2},
      {"AC3 A-tree round trip", ac3},
      {"AC4 star convergence", ac4},
      {"AC5 path convergence", ac5},
      {"AC6 binary trees share the star limit", ac6},
      {"AC7 discretization pipeline", ac7},
      {"AC8 obeys diagnostic", ac8},
      {"AC9 validation exit codes", ac9},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Result res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail << " [exception: " << e.what() << "]";
    }
    failed += !res.pass;
    std::cout << (res.pass ? "PASS " : "FAIL ") << name << ":" << res.detail.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
