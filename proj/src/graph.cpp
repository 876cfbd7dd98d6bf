#include "specabs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <tuple>
#include <utility>

#include "specabs/error.hpp"

namespace specabs {

namespace {

std::string describe(std::size_t position, const Edge& e) {
  return "edge #" + std::to_string(position) + " (" + std::to_string(e.source) + ", " +
         std::to_string(e.target) + ", " + std::to_string(e.weight) + ")";
}

}  // namespace

Graph graph_from_edges(std::vector<std::string> labels, std::vector<Edge> edges) {
  {
    std::unordered_set<std::string> seen;
    for (const auto& label : labels) {
      if (!seen.insert(label).second) {
        throw Error(ErrorCode::DuplicateLabel, "label '" + label + "' appears more than once");
      }
    }
  }

  const std::size_t n = labels.size();
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t pos = 0; pos < edges.size(); ++pos) {
    Edge& e = edges[pos];
    if (e.source >= n || e.target >= n) {
      throw Error(ErrorCode::IndexOutOfRange, describe(pos, e) + " references a node outside [0, " +
                                                  std::to_string(n) + ")");
    }
    if (e.source == e.target) throw Error(ErrorCode::SelfLoop, describe(pos, e));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonpositiveWeight, describe(pos, e));
    }
    if (e.source > e.target) std::swap(e.source, e.target);
    if (!pairs.emplace(e.source, e.target).second) {
      throw Error(ErrorCode::DuplicateEdge, describe(pos, e));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });

  Graph g;
  g.labels_ = std::move(labels);
  g.edges_ = std::move(edges);
  g.adjacency_.assign(n, {});
  g.degrees_.assign(n, 0.0);
  for (const Edge& e : g.edges_) {
    g.adjacency_[e.source].push_back({e.target, e.weight});
    g.adjacency_[e.target].push_back({e.source, e.weight});
    g.degrees_[e.source] += e.weight;
    g.degrees_[e.target] += e.weight;
    g.total_weight_ += e.weight;
  }
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

AdjacencyMatrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  AdjacencyMatrix a{Eigen::MatrixXd::Zero(n, n)};
  for (const Edge& e : g.edges()) {
    a.entries(e.source, e.target) = e.weight;
    a.entries(e.target, e.source) = e.weight;
  }
  return a;
}

DegreeMatrix degree_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  DegreeMatrix d{Eigen::VectorXd::Zero(n)};
  for (Eigen::Index i = 0; i < n; ++i) d.diagonal(i) = g.degree(static_cast<std::size_t>(i));
  return d;
}

LaplacianMatrix laplacian(const Graph& g, LaplacianKind kind) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  LaplacianMatrix l{Eigen::MatrixXd::Zero(n, n), kind};
  if (kind == LaplacianKind::Combinatorial) {
    for (Eigen::Index i = 0; i < n; ++i) l.entries(i, i) = g.degree(static_cast<std::size_t>(i));
    for (const Edge& e : g.edges()) {
      l.entries(e.source, e.target) = -e.weight;
      l.entries(e.target, e.source) = -e.weight;
    }
    return l;
  }

  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = g.degree(static_cast<std::size_t>(i));
    inv_sqrt(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    l.entries(i, i) = d > 0.0 ? 1.0 : 0.0;
  }
  for (const Edge& e : g.edges()) {
    double v = -e.weight * inv_sqrt(e.source) * inv_sqrt(e.target);
    l.entries(e.source, e.target) = v;
    l.entries(e.target, e.source) = v;
  }
  return l;
}

Graph induced_subgraph(const Graph& g, std::span<const std::size_t> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::EmptySubset, "induced subgraph needs at least one node");
  constexpr auto absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> local(g.node_count(), absent);
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (std::size_t pos = 0; pos < nodes.size(); ++pos) {
    std::size_t v = nodes[pos];
    if (v >= g.node_count()) {
      throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(v) + " is not in the graph");
    }
    if (local[v] != absent) {
      throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(v) + " selected twice");
    }
    local[v] = pos;
    labels.push_back(g.labels()[v]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.source] != absent && local[e.target] != absent) {
      edges.push_back({local[e.source], local[e.target], e.weight});
    }
  }
  return graph_from_edges(std::move(labels), std::move(edges));
}

namespace {

void check_covers(const Graph& g, const Partition& p) {
  if (p.size() != g.node_count()) {
    throw Error(ErrorCode::PartitionMismatch, "partition has " + std::to_string(p.size()) +
                                                  " nodes, graph has " + std::to_string(g.node_count()));
  }
}

}  // namespace

Graph quotient_graph(const Graph& g, const Partition& partition) {
  check_covers(g, partition);
  const std::size_t k = partition.cluster_count();
  // Crossing weights accumulated in canonical (a < b) order, then emitted sorted.
  std::vector<std::vector<double>> crossing(k, std::vector<double>(k, 0.0));
  for (const Edge& e : g.edges()) {
    std::size_t a = partition[e.source];
    std::size_t b = partition[e.target];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    crossing[a][b] += e.weight;
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      if (crossing[a][b] > 0.0) edges.push_back({a, b, crossing[a][b]});
    }
  }
  std::vector<std::string> labels(k);
  for (std::size_t c = 0; c < k; ++c) labels[c] = "c" + std::to_string(c);
  return graph_from_edges(std::move(labels), std::move(edges));
}

double intra_cluster_weight(const Graph& g, const Partition& partition) {
  check_covers(g, partition);
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    if (partition[e.source] == partition[e.target]) total += e.weight;
  }
  return total;
}

std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> members;
    stack.push_back(start);
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (const Neighbor& nb : g.neighbors(v)) {
        if (!seen[nb.node]) {
          seen[nb.node] = true;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

}  // namespace specabs
