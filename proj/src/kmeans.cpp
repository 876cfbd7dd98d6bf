#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "specabs/error.hpp"
#include "specabs/parallel.hpp"
#include "specabs/partition.hpp"
#include "specabs/sbm.hpp"

namespace specabs {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double median(std::vector<double>& values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

Eigen::MatrixXd compute_centers(const Eigen::MatrixXd& points, const std::vector<std::size_t>& assign, std::size_t k,
                                const DistanceMetric& metric) {
  const Eigen::Index dim = points.cols();
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), dim);
  if (metric.kind == MetricKind::Euclidean) {
    std::vector<double> counts(k, 0.0);
    for (std::size_t i = 0; i < assign.size(); ++i) {
      centers.row(static_cast<Eigen::Index>(assign[i])) += points.row(static_cast<Eigen::Index>(i));
      counts[assign[i]] += 1.0;
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0.0) centers.row(static_cast<Eigen::Index>(c)) /= counts[c];
    }
    return centers;
  }
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assign.size(); ++i) members[assign[i]].push_back(i);
  std::vector<double> column;
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) continue;
    for (Eigen::Index d = 0; d < dim; ++d) {
      column.clear();
      for (std::size_t i : members[c]) column.push_back(points(static_cast<Eigen::Index>(i), d));
      centers(static_cast<Eigen::Index>(c), d) = median(column);
    }
  }
  return centers;
}

struct RunResult {
  std::vector<std::size_t> assignment;
  double objective = std::numeric_limits<double>::infinity();
};

RunResult run_once(const Eigen::MatrixXd& points, std::size_t k, const DistanceMetric& metric, std::uint64_t seed,
                   std::size_t max_iterations) {
  const auto n = static_cast<std::size_t>(points.rows());
  UniformSource rng(seed);

  // k-means++ seeding: D^2 weighting on the metric distance.
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), points.cols());
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.below(n)));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = metric.cost(points.row(static_cast<Eigen::Index>(i)), centers.row(static_cast<Eigen::Index>(c - 1)));
      const double dist = metric.kind == MetricKind::Euclidean ? d : d * d;
      nearest[i] = std::min(nearest[i], dist);
      total += nearest[i];
    }
    std::size_t chosen = n - 1;
    const double target = rng.next() * total;
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      running += nearest[i];
      if (nearest[i] > 0.0 && running > target) {
        chosen = i;
        break;
      }
    }
    while (nearest[chosen] == 0.0 && chosen > 0) --chosen;
    centers.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(chosen));
  }

  std::vector<std::size_t> assign(n, k);
  std::vector<double> cost(n, 0.0);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_cost = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = metric.cost(points.row(static_cast<Eigen::Index>(i)), centers.row(static_cast<Eigen::Index>(c)));
        if (d < best_cost) {
          best_cost = d;
          best = c;
        }
      }
      if (assign[i] != best) changed = true;
      assign[i] = best;
      cost[i] = best_cost;
    }

    // An empty cluster takes the costliest point from a cluster of size > 1.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : assign) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t donor = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assign[i]] < 2) continue;
        if (donor == n || cost[i] > cost[donor]) donor = i;
      }
      --sizes[assign[donor]];
      assign[donor] = c;
      cost[donor] = 0.0;
      ++sizes[c];
      changed = true;
    }

    if (!changed && iter > 0) break;
    centers = compute_centers(points, assign, k, metric);
  }

  RunResult result;
  result.assignment = std::move(assign);
  result.objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    result.objective += metric.cost(points.row(static_cast<Eigen::Index>(i)),
                                    centers.row(static_cast<Eigen::Index>(result.assignment[i])));
  }
  return result;
}

std::size_t distinct_rows(const Eigen::MatrixXd& points) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(points.rows()));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index d = 0; d < points.cols(); ++d) rows[static_cast<std::size_t>(i)].push_back(points(i, d));
  }
  std::sort(rows.begin(), rows.end());
  return static_cast<std::size_t>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

}  // namespace

double DistanceMetric::cost(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                            const Eigen::Ref<const Eigen::RowVectorXd>& b) const {
  switch (kind) {
    case MetricKind::Euclidean:
      return (a - b).squaredNorm();
    case MetricKind::Manhattan:
      return (a - b).cwiseAbs().sum();
    case MetricKind::Fractional: {
      double total = 0.0;
      for (Eigen::Index d = 0; d < a.size(); ++d) total += std::pow(std::abs(a(d) - b(d)), q);
      return std::pow(total, 1.0 / q);
    }
  }
  return 0.0;
}

Partition kway_embedding_cluster(const Embedding& embedding, std::size_t k, const DistanceMetric& metric,
                                 std::uint64_t seed, const KMeansOptions& options) {
  if (metric.kind == MetricKind::Fractional && !(metric.q > 0.0 && metric.q < 1.0)) {
    throw Error(ErrorCode::InvalidFractionalExponent, "fractional exponent q = " + std::to_string(metric.q) +
                                                          " must lie in (0, 1)");
  }
  const auto n = static_cast<std::size_t>(embedding.node_count());
  if (k == 0 || k > n) {
    throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " for " + std::to_string(n) + " points");
  }
  const std::size_t distinct = distinct_rows(embedding.coordinates);
  if (distinct < k) {
    throw Error(ErrorCode::TooFewDistinctPoints,
                std::to_string(distinct) + " distinct points cannot form " + std::to_string(k) + " clusters");
  }

  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  std::vector<RunResult> runs(restarts);
  parallel_for(restarts, [&](std::size_t r) {
    runs[r] = run_once(embedding.coordinates, k, metric, splitmix(seed + splitmix(r)), options.max_iterations);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return Partition(std::move(runs[best].assignment)).canonical();
}

double kmeans_objective(const Embedding& embedding, const Partition& partition, const DistanceMetric& metric) {
  if (partition.size() != static_cast<std::size_t>(embedding.node_count())) {
    throw Error(ErrorCode::PartitionMismatch, "partition size differs from point count");
  }
  std::vector<std::size_t> assign(partition.assignment().begin(), partition.assignment().end());
  const Eigen::MatrixXd centers = compute_centers(embedding.coordinates, assign, partition.cluster_count(), metric);
  double total = 0.0;
  for (std::size_t i = 0; i < assign.size(); ++i) {
    total += metric.cost(embedding.coordinates.row(static_cast<Eigen::Index>(i)),
                         centers.row(static_cast<Eigen::Index>(assign[i])));
  }
  return total;
}

}  // namespace specabs
