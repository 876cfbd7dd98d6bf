#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "specabs/graph.hpp"
#include "specabs/partition_type.hpp"
#include "specabs/spectral.hpp"

namespace specabs {

struct CutMetrics {
  double cut_weight = 0.0;
  /// sum_a cut(C_a) / |C_a|
  double ratio_cut = 0.0;
  /// sum_a cut(C_a) / vol(C_a)
  double normalized_cut = 0.0;
  /// max_a cut(C_a) / min(vol(C_a), vol(V \ C_a))
  double cheeger = 0.0;
};

struct ClusterProfile {
  std::size_t size = 0;
  double internal_weight = 0.0;
  double external_weight = 0.0;
  /// internal_weight per intra-cluster node pair (0 for singletons).
  double internal_density = 0.0;
  /// internal_density / (external_weight per external pair); +inf when the
  /// cluster has no external weight.
  double separation = 0.0;
};

struct ConnectivityProfile {
  std::vector<ClusterProfile> clusters;
};

/// Cluster 0 holds entries >= -1e-12 * max|v| (positive and numerically zero),
/// cluster 1 the negative entries. Throws ConstantVector when one side is
/// empty.
Partition sign_bipartition(const Graph& g, const Eigen::VectorXd& v);

/// Splits a connected graph with at least two nodes into two clusters. The
/// spectrum argument holds the subgraph's two smallest Laplacian eigenpairs.
using Bisector = std::function<Partition(const Graph& subgraph, const Spectrum& spectrum)>;

/// Divisive clustering into exactly k clusters. Connected components seed the
/// cluster list; then the splittable cluster (two or more nodes) with the
/// smallest internal lambda_2 is split, ties going to the larger cluster and
/// then the lower minimum node index. A disconnected cluster is split into
/// its first component and the rest; a connected one is handed to `bisect`.
/// The result is numbered by first appearance.
///
/// Errors: KOutOfRange (k == 0, k > n, or more components than k when k > 1),
/// NotEnoughSplittableClusters.
Partition recursive_split(const Graph& g, std::size_t k, const Bisector& bisect, const SolverOptions& options = {});

/// recursive_split with Fiedler-vector sign bisection.
Partition recursive_bipartition(const Graph& g, std::size_t k, const SolverOptions& options = {});

enum class MetricKind { Euclidean, Manhattan, Fractional };

struct DistanceMetric {
  MetricKind kind = MetricKind::Euclidean;
  /// Exponent for MetricKind::Fractional, in (0, 1).
  double q = 0.5;

  /// Point-to-center cost used by the clustering objective: squared distance
  /// for Euclidean, L1 for Manhattan, (sum |d|^q)^(1/q) for Fractional.
  double cost(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b) const;
};

struct KMeansOptions {
  std::size_t restarts = 20;
  std::size_t max_iterations = 300;
};

/// Seeded k-means++ initialization followed by Lloyd iterations, repeated
/// `restarts` times; the lowest objective wins (earliest restart on ties).
/// Centers are coordinate-wise means (Euclidean) or medians (Manhattan,
/// Fractional). Errors: TooFewDistinctPoints, InvalidFractionalExponent,
/// KOutOfRange.
Partition kway_embedding_cluster(const Embedding& embedding, std::size_t k, const DistanceMetric& metric,
                                 std::uint64_t seed, const KMeansOptions& options = {});

/// Sum of metric.cost from each point to its cluster center (recomputed from
/// the partition).
double kmeans_objective(const Embedding& embedding, const Partition& partition, const DistanceMetric& metric);

/// Errors: PartitionMismatch.
CutMetrics cut_metrics(const Graph& g, const Partition& p);

/// Errors: PartitionMismatch.
ConnectivityProfile connectivity_profile(const Graph& g, const Partition& p);

}  // namespace specabs
