#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "specabs/graph.hpp"
#include "specabs/nonlinear.hpp"
#include "specabs/partition.hpp"

namespace specabs {

struct RecursiveLinear {};

struct RecursiveP {
  PLaplacianParams params;
};

struct KwayEmbedding {
  std::size_t dim = 1;
  DistanceMetric metric;
};

using ClusterMethod = std::variant<RecursiveLinear, RecursiveP, KwayEmbedding>;

struct LevelSpec {
  std::size_t k = 1;
  ClusterMethod method = RecursiveLinear{};
  std::uint64_t seed = 0;
};

/// One rung of the abstraction ladder. `partition` groups the nodes of the
/// previous level's graph (the base graph for level 0); `quotient` has one
/// node per resulting cluster.
struct HierarchyLevel {
  std::size_t level_index = 0;
  Partition partition;
  Graph quotient;
  ConnectivityProfile profile;
  /// Eigenvectors used to cluster this level (1 for sign bisection).
  std::size_t embedding_dim = 1;
  /// Edge weight absorbed inside this level's clusters.
  double intra_weight = 0.0;
};

struct Hierarchy {
  Graph base;
  std::vector<HierarchyLevel> levels;
};

/// Clusters the base graph with specs[0], then each quotient with the next
/// spec. Cluster counts must strictly decrease from level to level and the
/// first may not exceed the node count; a spec with k equal to its level's
/// node count yields the identity partition. Errors:
/// SpecMonotonicityViolation, plus anything the clustering raises.
Hierarchy build_hierarchy(const Graph& g, const std::vector<LevelSpec>& specs);

/// Base-node partition obtained by composing levels 0..level.
/// Errors: LevelOutOfRange.
Partition flatten(const Hierarchy& h, std::size_t level);

}  // namespace specabs
