#include <doctest.h>

#include <numeric>
#include <random>

#include "dendrolim/families.hpp"
#include "dendrolim/reconstruct.hpp"
#include "oracles.hpp"

using namespace dendrolim;

namespace {

DistanceMatrix full(int n, std::vector<double> v) { return DistanceMatrix::from_full(n, v); }

oracle::Matrix as_rows(const DistanceMatrix& a) {
  oracle::Matrix m(a.order(), std::vector<double>(a.order()));
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) m[i][j] = a.at(i, j);
  return m;
}

// Pairwise atom distances of a tree from an independent shortest-path pass.
oracle::Matrix atom_distances(const MeasuredRealTree& m, const std::vector<int>& q) {
  std::vector<std::tuple<int, int, double>> edges;
  for (const auto& e : m.skeleton().edges()) edges.emplace_back(e.u, e.v, e.length);
  auto d = oracle::floyd_warshall(m.skeleton().vertex_count(), edges);
  oracle::Matrix out(q.size(), std::vector<double>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i][j] = d[q[i]][q[j]];
  return out;
}

// Random tree metric: leaves of a random weighted tree, some repeated.
DistanceMatrix random_tree_metric(int n, std::mt19937_64& rng) {
  int size = n + 3;
  std::vector<std::tuple<int, int, double>> edges;
  std::uniform_real_distribution<double> len(0.01, 0.3);
  for (int v = 1; v < size; ++v) edges.emplace_back(static_cast<int>(rng() % v), v, len(rng));
  auto d = oracle::floyd_warshall(size, edges);
  std::vector<int> pick(n);
  for (auto& p : pick) p = static_cast<int>(rng() % size);
  DistanceMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a.set(i, j, d[pick[i]][pick[j]]);
  return a;
}

}  // namespace

TEST_SUITE("reconstruct") {
  TEST_CASE("A-tree of the equilateral triple is a star") {
    auto t = build_a_tree_with_points(full(3, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
    const auto& s = t.tree.skeleton();
    CHECK(s.vertex_count() == 4);
    CHECK(s.total_length() == doctest::Approx(1.5));
    for (int i = 0; i < 3; ++i) CHECK(t.tree.mass_at(t.q_vertex[i]) == doctest::Approx(1.0 / 3));
    for (const auto& e : s.edges()) CHECK(e.length == doctest::Approx(0.5));
  }

  TEST_CASE("A-tree of two points and of a path metric") {
    auto seg = build_a_tree(full(2, {0, 1, 1, 0}));
    CHECK(seg.skeleton().vertex_count() == 2);
    CHECK(seg.skeleton().total_length() == 1.0);
    CHECK(seg.atoms().size() == 2);

    auto p = build_a_tree_with_points(full(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
    CHECK(p.tree.skeleton().vertex_count() == 3);
    CHECK(p.tree.skeleton().vertex_distance(p.q_vertex[0], p.q_vertex[1]) == 1.0);
    CHECK(p.tree.skeleton().vertex_distance(p.q_vertex[1], p.q_vertex[2]) == 1.0);

    auto one = build_a_tree(DistanceMatrix(1));
    CHECK(one.skeleton().vertex_count() == 1);
    CHECK(one.atoms()[0].mass == 1.0);
  }

  TEST_CASE("4-cycle metric is rejected") {
    auto c4 = full(4, {0, 1, 2, 1, 1, 0, 1, 2, 2, 1, 0, 1, 1, 2, 1, 0});
    CHECK_FALSE(oracle::four_point(as_rows(c4), 1e-9));
    try {
      build_a_tree(c4);
      FAIL("expected NotATreeMetric");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotATreeMetric);
      CHECK(is_numerical(e.code()));
    }
  }

  TEST_CASE("negative Gromov products are reported") {
    // d(2,3) exceeds d(1,2) + d(1,3)
    auto bad = full(3, {0, 0.1, 0.1, 0.1, 0, 1, 0.1, 1, 0});
    CHECK_THROWS_WITH_AS(build_a_tree(bad), doctest::Contains("NegativeGromovProduct"), Error);
  }

  TEST_CASE("coincident points merge") {
    auto t = build_a_tree_with_points(full(3, {0, 0, 1, 0, 0, 1, 1, 1, 0}));
    CHECK(t.q_vertex[0] == t.q_vertex[1]);
    CHECK(t.tree.atoms().size() == 2);
    CHECK(t.tree.mass_at(t.q_vertex[0]) == doctest::Approx(2.0 / 3));
  }

  TEST_CASE("A-trees reproduce tree metrics and agree with the four-point oracle") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
      int n = 2 + static_cast<int>(rng() % 8);
      auto a = random_tree_metric(n, rng);
      REQUIRE(oracle::four_point(as_rows(a), 1e-12));
      auto t = build_a_tree_with_points(a);
      auto d = atom_distances(t.tree, t.q_vertex);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(d[i][j] - a.at(i, j)) <= 1e-9);
      CHECK(spanned_by_atoms(t.tree));

      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      DistanceMatrix b(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) b.set(i, j, a.at(perm[i], perm[j]));
      CHECK(measured_isometry_check(t.tree, build_a_tree(b)));
    }
  }

  TEST_CASE("perturbed metrics fail the same way the oracle does") {
    std::mt19937_64 rng(41);
    int rejected = 0;
    for (int trial = 0; trial < 60; ++trial) {
      int n = 4 + static_cast<int>(rng() % 4);
      auto a = random_tree_metric(n, rng);
      int i = static_cast<int>(rng() % n), j = static_cast<int>((i + 1 + rng() % (n - 1)) % n);
      a.set(std::min(i, j), std::max(i, j), a.at(i, j) + 0.05);
      bool tree_like = oracle::four_point(as_rows(a), 1e-9);
      bool built = true;
      try {
        build_a_tree(a);
      } catch (const Error& e) {
        built = false;
        CHECK((e.code() == ErrorCode::NotATreeMetric || e.code() == ErrorCode::NegativeGromovProduct));
      }
      CHECK(built == tree_like);
      rejected += !built;
    }
    CHECK(rejected > 30);
  }

  TEST_CASE("T^D_x small cases") {
    FiniteDendron star = limit_star();
    auto one = t_d_x(star, {{TreePoint::vertex(0), 0.3}});
    CHECK(one.skeleton().total_length() == 0.3);
    REQUIRE(one.atoms().size() == 1);
    CHECK(one.atoms()[0].mass == 1.0);
    CHECK(one.atoms()[0].vertex != 0);

    RealTreeSkeleton s(2, {{0, 1, 0.3}});
    FiniteDendron d(s, {{0.5, PointBase{TreePoint::vertex(0)}, FixedHeight{0.0}},
                        {0.5, PointBase{TreePoint::vertex(1)}, FixedHeight{0.0}}});
    auto flat = t_d_x(d, {{TreePoint::vertex(0), 0.0}, {TreePoint::vertex(1), 0.0}});
    CHECK(flat.skeleton().vertex_count() == 2);
    CHECK(flat.atoms().size() == 2);
    CHECK(flat.atoms()[0].mass == 0.5);

    NSample x{{TreePoint::vertex(0), 0.2}, {TreePoint::vertex(1), 0.1}};
    auto tall = t_d_x(d, x);
    CHECK(tall.skeleton().vertex_count() == 4);
    CHECK(tall.skeleton().total_length() == doctest::Approx(0.6));
    auto rho = rho_of_sample(d, x);
    CHECK(rho.at(0, 1) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(tall.skeleton().vertex_distance(tall.atoms()[0].vertex, tall.atoms()[1].vertex) ==
          doctest::Approx(0.6));

    // interior base points become vertices
    auto mid = t_d_x(d, {{TreePoint::on_edge(0, 0.1), 0.0}, {TreePoint::vertex(1), 0.05}});
    CHECK(mid.skeleton().total_length() == doctest::Approx(0.25));
  }

  TEST_CASE("rho of samples") {
    FiniteDendron star = limit_star();
    auto r = rho_of_sample(star, {{TreePoint::vertex(0), 0.5}, {TreePoint::vertex(0), 0.5}});
    CHECK(r.at(0, 1) == 1.0);
    CHECK(r.at(0, 0) == 0.0);
    CHECK(rho_of_sample(star, {{TreePoint::vertex(0), 0.5}}).order() == 1);
  }

  TEST_CASE("measured isometry") {
    RealTreeSkeleton a(3, {{0, 1, 0.4}, {1, 2, 0.6}});
    RealTreeSkeleton b(3, {{2, 0, 0.6}, {0, 1, 0.4}});
    MeasuredRealTree ma(a, {{0, 0.25}, {1, 0.25}, {2, 0.5}});
    MeasuredRealTree mb(b, {{1, 0.25}, {0, 0.25}, {2, 0.5}});
    CHECK(measured_isometry_check(ma, mb));
    MeasuredRealTree mc(b, {{1, 0.5}, {0, 0.25}, {2, 0.25}});
    CHECK_FALSE(measured_isometry_check(ma, mc));

    MeasuredRealTree unit(RealTreeSkeleton(2, {{0, 1, 1.0}}), {{0, 0.5}, {1, 0.5}});
    MeasuredRealTree twice(RealTreeSkeleton(2, {{0, 1, 2.0}}), {{0, 0.5}, {1, 0.5}});
    CHECK_FALSE(measured_isometry_check(unit, twice));

    MeasuredRealTree hanging(RealTreeSkeleton(2, {{0, 1, 1.0}}), {{0, 1.0}});
    CHECK_THROWS_WITH_AS(measured_isometry_check(unit, hanging), doctest::Contains("NotSpanned"),
                         Error);

    std::vector<SkeletonEdge> edges;
    std::vector<VertexAtom> atoms;
    for (int v = 1; v <= 13; ++v) {
      edges.push_back({0, v, 0.1});
      atoms.push_back({v, 1.0 / 13});
    }
    double sum = 0;
    for (auto& x : atoms) sum += x.mass;
    atoms.back().mass += 1.0 - sum;
    MeasuredRealTree big(RealTreeSkeleton(14, edges), atoms);
    CHECK_THROWS_WITH_AS(measured_isometry_check(big, big), doctest::Contains("TooManyAtoms"), Error);
  }

  TEST_CASE("round trip through rho for every example limit") {
    std::vector<FiniteDendron> limits{limit_path(), limit_star(), limit_comb(),
                                      limit_stretched_binary(3).dendron, limit_deep2(4).dendron};
    auto engine = make_engine(99);
    for (const auto& d : limits)
      for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(engine() % 7);
        auto x = draw_n_sample(d, n, engine);
        CHECK(measured_isometry_check(build_a_tree(rho_of_sample(d, x)), t_d_x(d, x)));
      }
  }
}
