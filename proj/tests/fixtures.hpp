#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specabs/graph.hpp"

namespace fixtures {

inline specabs::Graph from_adjacency(const Eigen::MatrixXd& a) {
  std::vector<specabs::Edge> edges;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != 0.0) edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, j)});
  return specabs::graph_from_edges(specabs::index_labels(static_cast<std::size_t>(a.rows())), edges);
}

inline specabs::Graph unit_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<specabs::Edge> edges;
  for (auto [i, j] : pairs) edges.push_back({i, j, 1.0});
  return specabs::graph_from_edges(specabs::index_labels(n), edges);
}

inline specabs::Graph path3() { return unit_graph(3, {{0, 1}, {1, 2}}); }
inline specabs::Graph triangle() { return unit_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline specabs::Graph cycle4() { return unit_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
inline specabs::Graph complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return unit_graph(n, pairs);
}
inline specabs::Graph single_edge() { return unit_graph(2, {{0, 1}}); }

/// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline specabs::Graph bridged_triangles() {
  return unit_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

inline std::vector<std::size_t> bridged_truth() { return {0, 0, 0, 1, 1, 1}; }

}  // namespace fixtures
