#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "specabs/error.hpp"
#include "specabs/partition.hpp"
#include "specabs/sbm.hpp"

using namespace specabs;

namespace {

std::vector<std::size_t> to_vector(const Partition& p) { return {p.assignment().begin(), p.assignment().end()}; }

Eigen::MatrixXd dense_adjacency(const Graph& g) { return adjacency_matrix(g).entries; }

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

double brute_kmeans_two(const Eigen::MatrixXd& x) {
  const auto n = static_cast<int>(x.rows());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    double total = 0.0;
    for (int side = 0; side < 2; ++side) {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
      int count = 0;
      for (int i = 0; i < n; ++i) {
        const int s = i == 0 ? 0 : static_cast<int>((mask >> (i - 1)) & 1u);
        if (s == side) {
          mean += x.row(i);
          ++count;
        }
      }
      mean /= count;
      for (int i = 0; i < n; ++i) {
        const int s = i == 0 ? 0 : static_cast<int>((mask >> (i - 1)) & 1u);
        if (s == side) total += (x.row(i) - mean).squaredNorm();
      }
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("sign_bipartition") {
  SUBCASE("bridged triangles match the brute-force normalized cut") {
    const Graph g = fixtures::bridged_triangles();
    const Partition p = sign_bipartition(g, fiedler_vector(eigendecompose(laplacian(g))));
    const auto best = oracle::best_bipartition(dense_adjacency(g), oracle::Cut::Normalized);
    CHECK(same_grouping(sides(p), best.side));
    CHECK(p.cluster_count() == 2);
  }
  SUBCASE("single edge") {
    const Graph g = fixtures::single_edge();
    const Partition p = sign_bipartition(g, fiedler_vector(eigendecompose(laplacian(g))));
    CHECK(p[0] != p[1]);
  }
  SUBCASE("4-cycle is balanced") {
    const Graph g = fixtures::cycle4();
    const Partition p = sign_bipartition(g, fiedler_vector(eigendecompose(laplacian(g))));
    CHECK(p.cluster_sizes() == std::vector<std::size_t>{2, 2});
    CHECK(cut_metrics(g, p).cut_weight == 2.0);
  }
  SUBCASE("zeros join cluster 0") {
    const Partition p = sign_bipartition(fixtures::path3(), Eigen::Vector3d(1.0, 0.0, -1.0));
    CHECK(to_vector(p) == std::vector<std::size_t>{0, 0, 1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_WITH_AS(sign_bipartition(fixtures::path3(), Eigen::Vector3d(1, 2, 3)), doctest::Contains("ConstantVector"),
                         Error);
    CHECK_THROWS_WITH_AS(sign_bipartition(fixtures::path3(), Eigen::Vector2d(1, -1)),
                         doctest::Contains("DimensionMismatch"), Error);
  }
}

TEST_CASE("sign_bipartition is invariant to positive scaling") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  const Graph g = fixtures::complete(9);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd v(9);
    for (auto& x : v) x = normal(rng);
    if (trial % 5 == 0) v(trial % 9) = 0.0;
    const Partition base = sign_bipartition(g, v);
    for (double c : {1e-300, 1e-9, 0.37, 1.0, 42.0, 1e12, 1e300}) CHECK(sign_bipartition(g, c * v) == base);
  }
}

TEST_CASE("sign bipartition normalized cut is within a factor of 4 of optimal") {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const Eigen::MatrixXd a = oracle::random_connected_adjacency(n, 0.3, 1000 + seed);
    const Graph g = fixtures::from_adjacency(a);
    const Partition p = sign_bipartition(g, fiedler_vector(eigendecompose(laplacian(g))));
    const double found = oracle::cut_value(a, sides(p), oracle::Cut::Normalized);
    const double best = oracle::best_bipartition(a, oracle::Cut::Normalized).value;
    CHECK(found <= 4.0 * best + 1e-12);
    CHECK(std::abs(cut_metrics(g, p).normalized_cut - found) < 1e-12);
    ++checked;
  }
}

TEST_CASE("recursive_bipartition") {
  SUBCASE("k = 1") {
    CHECK(recursive_bipartition(fixtures::bridged_triangles(), 1) == Partition::single(6));
  }
  SUBCASE("bridged triangles, k = 2") {
    const Graph g = fixtures::bridged_triangles();
    const auto best = oracle::best_bipartition(dense_adjacency(g), oracle::Cut::Normalized);
    CHECK(same_grouping(sides(recursive_bipartition(g, 2)), best.side));
  }
  SUBCASE("planted blocks are recovered") {
    const Graph g = sbm_generate(4, 8, 0.9, 0.02, 7);
    const Partition p = recursive_bipartition(g, 4);
    CHECK(p.cluster_count() == 4);
    CHECK(oracle::matched_accuracy(to_vector(p), to_vector(planted_blocks(4, 8))) >= 0.95);
  }
  SUBCASE("components count toward k") {
    const Graph g = fixtures::unit_graph(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}});
    CHECK(to_vector(recursive_bipartition(g, 2)) == std::vector<std::size_t>{0, 0, 0, 1, 1, 1, 1});
    CHECK(recursive_bipartition(g, 3).cluster_count() == 3);
    CHECK(recursive_bipartition(g, 7) == Partition::identity(7));
  }
  SUBCASE("errors") {
    const Graph g = fixtures::path3();
    CHECK_THROWS_WITH_AS(recursive_bipartition(g, 0), doctest::Contains("KOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(recursive_bipartition(g, 4), doctest::Contains("KOutOfRange"), Error);
    const Graph three = graph_from_edges(index_labels(3), {});
    CHECK_THROWS_WITH_AS(recursive_bipartition(three, 2), doctest::Contains("KOutOfRange"), Error);
  }
}

TEST_CASE("recursive_bipartition returns exactly k nonempty clusters") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 5 + static_cast<int>(seed % 20);
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(n, 0.15, seed));
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
      const Partition p = recursive_bipartition(g, k);
      CHECK(p.cluster_count() == k);
      for (auto s : p.cluster_sizes()) CHECK(s > 0);
    }
  }
}

TEST_CASE("kway_embedding_cluster") {
  SUBCASE("bridged triangles reach the brute-force optimum") {
    const Graph g = fixtures::bridged_triangles();
    const Embedding e = spectral_embedding(eigendecompose(laplacian(g)), 1);
    const Partition p = kway_embedding_cluster(e, 2, {}, 0);
    CHECK(same_grouping(sides(p), {0, 0, 0, 1, 1, 1}));
    CHECK(std::abs(kmeans_objective(e, p, {}) - brute_kmeans_two(e.coordinates)) < 1e-12);
  }
  SUBCASE("coincident points are recovered under every metric") {
    const Graph g = sbm_generate(2, 5, 1.0, 0.0, 1);
    const Embedding e = spectral_embedding(eigendecompose(laplacian(g)), 1);
    for (auto metric : {DistanceMetric{MetricKind::Euclidean}, DistanceMetric{MetricKind::Manhattan},
                        DistanceMetric{MetricKind::Fractional, 0.5}}) {
      const Partition p = kway_embedding_cluster(e, 2, metric, 4);
      CHECK(oracle::matched_accuracy(to_vector(p), to_vector(planted_blocks(2, 5))) == 1.0);
    }
  }
  SUBCASE("fractional and manhattan agree on separated blocks") {
    const Graph g = sbm_generate(3, 4, 1.0, 0.05, 2);
    const Embedding e = spectral_embedding(eigendecompose(laplacian(g)), 2);
    const Partition manhattan = kway_embedding_cluster(e, 3, {MetricKind::Manhattan}, 8);
    const Partition fractional = kway_embedding_cluster(e, 3, {MetricKind::Fractional, 0.5}, 8);
    CHECK(manhattan.canonical() == fractional.canonical());
    CHECK(oracle::matched_accuracy(to_vector(manhattan), to_vector(planted_blocks(3, 4))) == 1.0);
  }
  SUBCASE("errors") {
    const Embedding e{Eigen::MatrixXd::Zero(4, 2)};
    CHECK_THROWS_WITH_AS(kway_embedding_cluster(e, 2, {}, 0), doctest::Contains("TooFewDistinctPoints"), Error);
    const Embedding ok{Eigen::MatrixXd::Identity(4, 4)};
    CHECK_THROWS_WITH_AS(kway_embedding_cluster(ok, 2, {MetricKind::Fractional, 1.0}, 0),
                         doctest::Contains("InvalidFractionalExponent"), Error);
    CHECK_THROWS_WITH_AS(kway_embedding_cluster(ok, 2, {MetricKind::Fractional, 0.0}, 0),
                         doctest::Contains("InvalidFractionalExponent"), Error);
    CHECK_THROWS_WITH_AS(kway_embedding_cluster(ok, 0, {}, 0), doctest::Contains("KOutOfRange"), Error);
  }
}

TEST_CASE("kway_embedding_cluster is deterministic") {
  const Graph g = sbm_generate(4, 10, 0.5, 0.1, 13);
  const Embedding e = spectral_embedding(eigendecompose(laplacian(g)), 3);
  for (auto metric : {DistanceMetric{MetricKind::Euclidean}, DistanceMetric{MetricKind::Manhattan},
                      DistanceMetric{MetricKind::Fractional, 0.3}}) {
    const Partition first = kway_embedding_cluster(e, 4, metric, 99);
    for (int r = 0; r < 3; ++r) CHECK(kway_embedding_cluster(e, 4, metric, 99) == first);
  }
}

TEST_CASE("distance metric costs") {
  const Eigen::RowVector2d a(0.0, 0.0), b(3.0, 4.0);
  CHECK(DistanceMetric{MetricKind::Euclidean}.cost(a, b) == 25.0);
  CHECK(DistanceMetric{MetricKind::Manhattan}.cost(a, b) == 7.0);
  CHECK(std::abs(DistanceMetric{MetricKind::Fractional, 0.5}.cost(a, b) - std::pow(std::sqrt(3.0) + 2.0, 2.0)) < 1e-12);
}

TEST_CASE("cut_metrics") {
  SUBCASE("single cluster") {
    const CutMetrics m = cut_metrics(fixtures::bridged_triangles(), Partition::single(6));
    CHECK(m.cut_weight == 0.0);
    CHECK(m.ratio_cut == 0.0);
    CHECK(m.normalized_cut == 0.0);
    CHECK(m.cheeger == 0.0);
  }
  SUBCASE("single edge") {
    const CutMetrics m = cut_metrics(fixtures::single_edge(), Partition::identity(2));
    CHECK(m.cut_weight == 1.0);
    CHECK(m.ratio_cut == 2.0);
    CHECK(m.normalized_cut == 2.0);
    CHECK(m.cheeger == 1.0);
  }
  SUBCASE("bridged triangles") {
    const Graph g = fixtures::bridged_triangles();
    const Partition p(fixtures::bridged_truth());
    const CutMetrics m = cut_metrics(g, p);
    CHECK(m.cut_weight == 1.0);
    CHECK(std::abs(m.ratio_cut - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(m.normalized_cut - 2.0 / 7.0) < 1e-15);
    CHECK(std::abs(m.cheeger - 1.0 / 7.0) < 1e-15);
    const auto a = dense_adjacency(g);
    CHECK(std::abs(m.normalized_cut - oracle::cut_value(a, sides(p), oracle::Cut::Normalized)) < 1e-15);
    CHECK(std::abs(m.ratio_cut - oracle::cut_value(a, sides(p), oracle::Cut::Ratio)) < 1e-15);
    CHECK(std::abs(m.cheeger - oracle::cut_value(a, sides(p), oracle::Cut::Cheeger)) < 1e-15);
  }
  SUBCASE("mismatch") {
    CHECK_THROWS_WITH_AS(cut_metrics(fixtures::path3(), Partition::single(4)), doctest::Contains("PartitionMismatch"),
                         Error);
  }
}

TEST_CASE("cut metrics are nonnegative and zero exactly without crossing edges") {
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 4 + static_cast<int>(seed % 10);
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(n, 0.2, seed));
    std::vector<std::size_t> assign(static_cast<std::size_t>(n));
    const std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < assign.size(); ++i) assign[i] = i < k ? i : rng() % k;
    const CutMetrics m = cut_metrics(g, Partition(assign));
    const bool crossing = m.cut_weight > 0.0;
    for (double v : {m.cut_weight, m.ratio_cut, m.normalized_cut, m.cheeger}) {
      CHECK(v >= 0.0);
      CHECK((v > 0.0) == crossing);
    }
    CHECK(crossing == (k > 1));
  }
}

TEST_CASE("connectivity_profile") {
  SUBCASE("bridged triangles") {
    const auto profile = connectivity_profile(fixtures::bridged_triangles(), Partition(fixtures::bridged_truth()));
    REQUIRE(profile.clusters.size() == 2);
    for (const auto& c : profile.clusters) {
      CHECK(c.size == 3);
      CHECK(c.internal_weight == 3.0);
      CHECK(c.external_weight == 1.0);
      CHECK(c.internal_density == 1.0);
      CHECK(std::abs(c.separation - 9.0) < 1e-12);
    }
  }
  SUBCASE("single cluster") {
    const auto profile = connectivity_profile(fixtures::bridged_triangles(), Partition::single(6));
    REQUIRE(profile.clusters.size() == 1);
    CHECK(profile.clusters[0].external_weight == 0.0);
    CHECK(std::isinf(profile.clusters[0].separation));
    CHECK(profile.clusters[0].separation > 0.0);
  }
  SUBCASE("planted SBM blocks are denser inside than across") {
    const Graph g = sbm_generate(2, 15, 0.9, 0.05, 3);
    const Partition p = planted_blocks(2, 15);
    const auto profile = connectivity_profile(g, p);
    const auto a = dense_adjacency(g);
    double inside = 0.0, across = 0.0, inside_pairs = 0.0, across_pairs = 0.0;
    for (int i = 0; i < 30; ++i)
      for (int j = i + 1; j < 30; ++j) {
        if (p[i] == p[j]) {
          inside += a(i, j);
          inside_pairs += 1.0;
        } else {
          across += a(i, j);
          across_pairs += 1.0;
        }
      }
    double mean_density = 0.0;
    for (const auto& c : profile.clusters) mean_density += c.internal_density / 2.0;
    CHECK(std::abs(mean_density - inside / inside_pairs) < 1e-12);
    CHECK(mean_density > across / across_pairs);
  }
  SUBCASE("mismatch") {
    CHECK_THROWS_WITH_AS(connectivity_profile(fixtures::path3(), Partition::single(2)),
                         doctest::Contains("PartitionMismatch"), Error);
  }
}

TEST_CASE("profile weights reconstruct the total graph weight") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 3 + static_cast<int>(seed % 15);
    const Graph g = fixtures::from_adjacency(oracle::random_connected_adjacency(n, 0.3, seed));
    std::vector<std::size_t> assign(static_cast<std::size_t>(n));
    const std::size_t k = 1 + rng() % std::min<std::size_t>(4, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < assign.size(); ++i) assign[i] = i < k ? i : rng() % k;
    double total = 0.0;
    for (const auto& c : connectivity_profile(g, Partition(assign)).clusters)
      total += c.internal_weight + 0.5 * c.external_weight;
    CHECK(std::abs(total - g.total_weight()) < 1e-9 * g.total_weight());
  }
}

TEST_CASE("planted partition cuts beat random partitions of the same shape") {
  int failures = 0, trials = 0;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const Graph g = sbm_generate(2, 10, 0.8, 0.1, seed);
    const Partition planted = planted_blocks(2, 10);
    const CutMetrics truth = cut_metrics(g, planted);
    std::mt19937_64 rng(seed);
    for (int r = 0; r < 100; ++r) {
      std::vector<std::size_t> shuffled = to_vector(planted);
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const CutMetrics other = cut_metrics(g, Partition(shuffled));
      ++trials;
      if (truth.cut_weight > other.cut_weight || truth.ratio_cut > other.ratio_cut ||
          truth.normalized_cut > other.normalized_cut || truth.cheeger > other.cheeger)
        ++failures;
    }
  }
  CHECK(failures < trials / 20);
}
