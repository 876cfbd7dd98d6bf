#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specabs/partition_type.hpp"

namespace specabs {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  std::size_t node;
  double weight;
};

/// Weighted undirected simple graph with labelled nodes. Immutable once built;
/// edges are stored canonically as (min, max, w) in lexicographic order.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t node) const { return adjacency_[node]; }

  double total_weight() const noexcept { return total_weight_; }
  /// Weighted degree d(i).
  double degree(std::size_t node) const { return degrees_[node]; }
  const std::vector<double>& degrees() const noexcept { return degrees_; }

  bool operator==(const Graph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  friend Graph graph_from_edges(std::vector<std::string>, std::vector<Edge>);

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> degrees_;
  double total_weight_ = 0.0;
};

/// Validates and canonicalizes. Errors: DuplicateLabel, SelfLoop,
/// NonpositiveWeight, IndexOutOfRange, DuplicateEdge.
Graph graph_from_edges(std::vector<std::string> labels, std::vector<Edge> edges);

/// Labels "0", "1", ... for generated graphs.
std::vector<std::string> index_labels(std::size_t n);

struct AdjacencyMatrix {
  Eigen::MatrixXd entries;
};

struct DegreeMatrix {
  Eigen::VectorXd diagonal;
};

enum class LaplacianKind { Combinatorial, Normalized };

struct LaplacianMatrix {
  Eigen::MatrixXd entries;
  LaplacianKind kind = LaplacianKind::Combinatorial;

  Eigen::Index size() const { return entries.rows(); }
};

AdjacencyMatrix adjacency_matrix(const Graph& g);
DegreeMatrix degree_matrix(const Graph& g);

/// Combinatorial: L = D - A. Normalized: I - D^{-1/2} A D^{-1/2}, where an
/// isolated node gets an all-zero row and column.
LaplacianMatrix laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::Combinatorial);

/// Subgraph over `nodes` (in the given order, duplicates rejected), keeping
/// every edge with both endpoints selected.
Graph induced_subgraph(const Graph& g, std::span<const std::size_t> nodes);

/// One node per cluster, labelled "c<id>"; inter-cluster edge weight is the
/// sum of crossing weights. Intra-cluster weight is dropped.
Graph quotient_graph(const Graph& g, const Partition& partition);

/// Total weight of edges whose endpoints share a cluster.
double intra_cluster_weight(const Graph& g, const Partition& partition);

/// Connected components, each ascending; components ordered by smallest node.
std::vector<std::vector<std::size_t>> connected_components(const Graph& g);

}  // namespace specabs
