#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "specabs/error.hpp"
#include "specabs/nonlinear.hpp"
#include "specabs/sbm.hpp"

using namespace specabs;

namespace {

std::vector<int> sides(const Partition& p) {
  std::vector<int> out;
  for (auto c : p.assignment()) out.push_back(static_cast<int>(c));
  return out;
}

bool same_grouping(const std::vector<int>& a, const std::vector<int>& b) {
  bool direct = true, flipped = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    direct = direct && a[i] == b[i];
    flipped = flipped && a[i] != b[i];
  }
  return direct || flipped;
}

Graph scaled(const Graph& g, double c) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.weight *= c;
  return graph_from_edges(g.labels(), edges);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double brute_p_denominator(const Eigen::VectorXd& f, double p) {
  // min_c sum |f_i - c|^p by ternary search; the sum is convex in c.
  double lo = f.minCoeff(), hi = f.maxCoeff();
  auto value = [&](double c) { return (f.array() - c).abs().pow(p).sum(); };
  for (int it = 0; it < 200; ++it) {
    const double a = lo + (hi - lo) / 3.0, b = hi - (hi - lo) / 3.0;
    if (value(a) < value(b)) hi = b; else lo = a;
  }
  return value(0.5 * (lo + hi));
}

PLaplacianParams linear_params() {
  PLaplacianParams params;
  params.p = 2.0;
  params.continuation_steps = 1;
  return params;
}

}  // namespace

TEST_CASE("p_laplacian_apply") {
  const Graph g = fixtures::bridged_triangles();
  CHECK(p_laplacian_apply(g, Eigen::VectorXd::Constant(6, 3.5), 1.3).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::VectorXd edge = p_laplacian_apply(fixtures::single_edge(), Eigen::Vector2d(0.0, 1.0), 1.5);
  CHECK(std::abs(edge(0) + 1.0) < 1e-15);
  CHECK(std::abs(edge(1) - 1.0) < 1e-15);

  const Eigen::VectorXd half = p_laplacian_apply(fixtures::single_edge(), Eigen::Vector2d(0.0, 4.0), 1.5);
  CHECK(std::abs(half(0) + 2.0) < 1e-12);

  CHECK_THROWS_WITH_AS(p_laplacian_apply(g, Eigen::VectorXd::Zero(6), 1.0), doctest::Contains("ExponentOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(p_laplacian_apply(g, Eigen::VectorXd::Zero(6), 2.5), doctest::Contains("ExponentOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(p_laplacian_apply(g, Eigen::VectorXd::Zero(5), 1.5), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("p_laplacian_apply at p = 2 is the Laplacian product") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 25);
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(n, 0.3, seed));
    Eigen::VectorXd f(n);
    for (auto& x : f) x = normal(rng);
    CHECK((p_laplacian_apply(g, f, 2.0) - laplacian(g).entries * f).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("p_rayleigh") {
  const Graph g = fixtures::bridged_triangles();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  for (double p : {1.1, 1.5, 2.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd f(6);
      for (auto& x : f) x = normal(rng);
      double numerator = 0.0;
      for (const Edge& e : g.edges()) numerator += e.weight * std::pow(std::abs(f(e.source) - f(e.target)), p);
      CHECK(std::abs(p_rayleigh(g, f, p) - numerator / brute_p_denominator(f, p)) < 1e-9);
    }
  }
  // At p = 2 the optimal shift is the mean, so R_2 is the ordinary quotient on mean-zero vectors.
  Eigen::VectorXd f(6);
  f << 1, 2, 3, -1, -2, -3;
  CHECK(std::abs(p_rayleigh(g, f, 2.0) - rayleigh_quotient(laplacian(g), f)) < 1e-12);
}

TEST_CASE("threshold_sweep") {
  const Graph g = fixtures::bridged_triangles();
  Eigen::VectorXd f(6);
  f << 0.3, 0.2, 0.1, -0.1, -0.2, -0.3;
  const SweepCut cut = threshold_sweep(g, f, SweepCriterion::Cheeger);
  CHECK(same_grouping(sides(cut.partition), {0, 0, 0, 1, 1, 1}));
  CHECK(std::abs(cut.value - 1.0 / 7.0) < 1e-15);
  const auto a = adjacency_matrix(g).entries;
  CHECK(std::abs(threshold_sweep(g, f, SweepCriterion::Ratio).value - oracle::cut_value(a, {0, 0, 0, 1, 1, 1}, oracle::Cut::Ratio)) < 1e-15);
  CHECK(std::abs(threshold_sweep(g, f, SweepCriterion::Normalized).value - 2.0 / 7.0) < 1e-15);
}

TEST_CASE("p_spectral_bipartition") {
  SUBCASE("bridged triangles") {
    const Graph g = fixtures::bridged_triangles();
    const auto best = oracle::best_bipartition(adjacency_matrix(g).entries, oracle::Cut::Cheeger);
    PLaplacianParams params;
    params.p = 1.2;
    CHECK(same_grouping(sides(p_spectral_bipartition(g, params, 0)), best.side));
  }
  SUBCASE("p = 2 reproduces the Fiedler sweep") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(12, 0.25, seed));
      const PSpectralResult r = p_spectral_bisect(g, linear_params(), seed);
      const SweepCut linear = threshold_sweep(g, fiedler_vector(eigendecompose(laplacian(g))), SweepCriterion::Cheeger);
      CHECK(std::abs(r.sweep_value - linear.value) < 1e-9);
      CHECK(std::abs(cut_metrics(g, r.partition).cheeger - linear.value) < 1e-9);
    }
  }
  SUBCASE("p = 1.2 does not worsen the median Cheeger value") {
    std::vector<double> nonlinear, linear;
    for (std::uint64_t seed = 11; seed < 61; ++seed) {
      const Graph g = sbm_generate(2, 8, 0.9, 0.05, seed);
      if (connected_components(g).size() != 1) continue;
      PLaplacianParams params;
      params.p = 1.2;
      nonlinear.push_back(cut_metrics(g, p_spectral_bipartition(g, params, seed)).cheeger);
      linear.push_back(cut_metrics(g, p_spectral_bipartition(g, linear_params(), seed)).cheeger);
    }
    REQUIRE(nonlinear.size() >= 40);
    CHECK(median(nonlinear) <= median(linear) + 1e-12);
  }
  SUBCASE("errors") {
    const Graph split = fixtures::unit_graph(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_WITH_AS(p_spectral_bipartition(split, {}, 0), doctest::Contains("DisconnectedGraph"), Error);
    PLaplacianParams bad;
    bad.p = 1.0;
    CHECK_THROWS_WITH_AS(p_spectral_bipartition(fixtures::path3(), bad, 0), doctest::Contains("ExponentOutOfRange"), Error);
    bad = {};
    bad.continuation_steps = 0;
    CHECK_THROWS_AS(p_spectral_bipartition(fixtures::path3(), bad, 0), Error);
    bad = {};
    bad.inner_tolerance = 0.0;
    CHECK_THROWS_AS(p_spectral_bipartition(fixtures::path3(), bad, 0), Error);
  }
}

TEST_CASE("descent never increases the objective") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 6 + static_cast<int>(seed % 20);
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(n, 0.2, seed));
    PLaplacianParams params;
    params.p = 1.1 + 0.03 * static_cast<double>(seed % 10);
    const PSpectralResult r = p_spectral_bisect(g, params, seed);
    REQUIRE(r.trace.size() == params.continuation_steps);
    for (const auto& step : r.trace)
      for (std::size_t i = 1; i < step.size(); ++i) CHECK(step[i] <= step[i - 1]);
    CHECK(r.objective <= r.initial_objective);
    const Eigen::VectorXd fiedler = fiedler_vector(eigendecompose(laplacian(g)));
    CHECK(std::abs(r.initial_objective - p_rayleigh(g, fiedler, params.p)) < 1e-9 * r.initial_objective);
    CHECK(std::abs(r.objective - p_rayleigh(g, r.f, params.p)) < 1e-9 * r.objective);
    CHECK(std::abs(brute_p_denominator(r.f, params.p) - 1.0) < 1e-6);
  }
}

TEST_CASE("p_spectral_bipartition is invariant to weight scaling") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(10 + static_cast<int>(seed), 0.2, seed));
    const Partition base = p_spectral_bipartition(g, {}, seed);
    for (double c : {1e-3, 0.5, 3.0, 1e4}) CHECK(p_spectral_bipartition(scaled(g, c), {}, seed) == base);
  }
}

TEST_CASE("p_recursive_bipartition") {
  CHECK(p_recursive_bipartition(fixtures::bridged_triangles(), 1, {}, 0) == Partition::single(6));

  const Graph g = fixtures::bridged_triangles();
  const auto best = oracle::best_bipartition(adjacency_matrix(g).entries, oracle::Cut::Cheeger);
  CHECK(same_grouping(sides(p_recursive_bipartition(g, 2, {}, 0)), best.side));

  CHECK_THROWS_WITH_AS(p_recursive_bipartition(g, 7, {}, 0), doctest::Contains("KOutOfRange"), Error);
}

TEST_CASE("p = 2 bisection matches the linear bisection on two-block planted graphs") {
  int compared = 0;
  for (std::uint64_t seed = 0; compared < 20; ++seed) {
    const Graph g = sbm_generate(2, 6 + seed % 5, 0.9, 0.05, 200 + seed);
    if (connected_components(g).size() != 1) continue;
    CHECK(p_recursive_bipartition(g, 2, linear_params(), seed) == recursive_bipartition(g, 2));
    ++compared;
  }
}

TEST_CASE("jacobian_graph") {
  SUBCASE("linear chain") {
    CouplingSystem sys{Eigen::MatrixXd::Zero(4, 4), Eigen::Matrix<bool, -1, -1>::Constant(4, 4, true)};
    for (int i = 0; i + 1 < 4; ++i) sys.couplings(i, i + 1) = 0.5;
    for (int i = 0; i < 4; ++i) sys.couplings(i, i) = 9.0;
    const JacobianGraph jg = jacobian_graph(sys, 0.1);
    CHECK(jg.graph.edges().size() == 3);
    for (const Edge& e : jg.graph.edges()) CHECK(e.target == e.source + 1);
    CHECK(jg.largest_component == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(jg.graph.labels()[2] == "x2");
  }
  SUBCASE("mask all false") {
    CouplingSystem sys{Eigen::MatrixXd::Ones(4, 4), Eigen::Matrix<bool, -1, -1>::Constant(4, 4, false)};
    const JacobianGraph jg = jacobian_graph(sys, 0.0);
    CHECK(jg.graph.edges().empty());
    CHECK(jg.largest_component == std::vector<std::size_t>{0});
  }
  SUBCASE("triangle and edge") {
    CouplingSystem sys{Eigen::MatrixXd::Zero(5, 5), Eigen::Matrix<bool, -1, -1>::Constant(5, 5, false)};
    for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 0}, {3, 4}}) {
      sys.couplings(i, j) = 1.0;
      sys.linear_mask(i, j) = true;
    }
    CHECK(jacobian_graph(sys, 0.5).largest_component == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("threshold is strict and uses the larger direction") {
    CouplingSystem sys{Eigen::MatrixXd::Zero(2, 2), Eigen::Matrix<bool, -1, -1>::Constant(2, 2, false)};
    sys.couplings(1, 0) = -0.5;
    sys.linear_mask(0, 1) = true;
    CHECK(jacobian_graph(sys, 0.4).graph.edges().size() == 1);
    CHECK(jacobian_graph(sys, 0.5).graph.edges().empty());
  }
  SUBCASE("errors") {
    CouplingSystem sys{Eigen::MatrixXd::Zero(3, 3), Eigen::Matrix<bool, -1, -1>::Constant(2, 2, false)};
    CHECK_THROWS_WITH_AS(jacobian_graph(sys, 0.0), doctest::Contains("DimensionMismatch"), Error);
    CouplingSystem ok{Eigen::MatrixXd::Zero(2, 2), Eigen::Matrix<bool, -1, -1>::Constant(2, 2, false)};
    CHECK_THROWS_AS(jacobian_graph(ok, -1.0), Error);
  }
}

TEST_CASE("jacobian_graph is invariant under simultaneous permutation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 12;
    CouplingSystem sys{Eigen::MatrixXd(n, n), Eigen::Matrix<bool, -1, -1>(n, n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        sys.couplings(i, j) = u(rng);
        sys.linear_mask(i, j) = rng() % 5 == 0;
      }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CouplingSystem moved{Eigen::MatrixXd(n, n), Eigen::Matrix<bool, -1, -1>(n, n)};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        moved.couplings(perm[i], perm[j]) = sys.couplings(i, j);
        moved.linear_mask(perm[i], perm[j]) = sys.linear_mask(i, j);
      }
    const JacobianGraph a = jacobian_graph(sys, 0.3);
    const JacobianGraph b = jacobian_graph(moved, 0.3);
    std::set<std::pair<int, int>> ea, eb;
    for (const Edge& e : a.graph.edges()) {
      const int s = perm[e.source], t = perm[e.target];
      ea.emplace(std::min(s, t), std::max(s, t));
    }
    for (const Edge& e : b.graph.edges()) eb.emplace(static_cast<int>(e.source), static_cast<int>(e.target));
    CHECK(ea == eb);
    CHECK(a.largest_component.size() == b.largest_component.size());
  }
}
