#include "specabs/sbm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "specabs/error.hpp"

namespace specabs {

std::size_t UniformSource::below(std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % b;
  for (;;) {
    std::uint64_t draw = engine_();
    if (draw < limit) return static_cast<std::size_t>(draw % b);
  }
}

Graph sbm_generate(const std::vector<std::size_t>& block_sizes,
                   const std::vector<std::vector<double>>& probabilities, std::uint64_t seed) {
  const std::size_t k = block_sizes.size();
  if (probabilities.size() != k) {
    throw Error(ErrorCode::DimensionMismatch, "probability matrix must be " + std::to_string(k) + "x" +
                                                  std::to_string(k));
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (probabilities[a].size() != k) {
      throw Error(ErrorCode::DimensionMismatch, "probability matrix row " + std::to_string(a) + " has wrong length");
    }
    for (std::size_t b = 0; b < k; ++b) {
      double p = probabilities[a][b];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "probability " + std::to_string(p) + " outside [0, 1]");
      }
      if (p != probabilities[b][a]) {
        throw Error(ErrorCode::InvalidProbability, "probability matrix is not symmetric");
      }
    }
  }

  std::vector<std::size_t> block_of;
  for (std::size_t b = 0; b < k; ++b) block_of.insert(block_of.end(), block_sizes[b], b);
  const std::size_t n = block_of.size();

  // One draw per unordered pair, lexicographic order.
  UniformSource rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double u = rng.next();
      if (u < probabilities[block_of[i]][block_of[j]]) edges.push_back({i, j, 1.0});
    }
  }
  return graph_from_edges(index_labels(n), std::move(edges));
}

Graph sbm_generate(std::size_t blocks, std::size_t nodes_per_block, double p_in, double p_out,
                   std::uint64_t seed) {
  if (!(p_out >= 0.0 && p_out <= p_in && p_in <= 1.0)) {
    throw Error(ErrorCode::InvalidProbability,
                "need 0 <= p_out <= p_in <= 1, got p_in=" + std::to_string(p_in) + " p_out=" + std::to_string(p_out));
  }
  if (blocks < 2 || nodes_per_block < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least 2 blocks of at least 2 nodes");
  }
  std::vector<std::vector<double>> probs(blocks, std::vector<double>(blocks, p_out));
  for (std::size_t b = 0; b < blocks; ++b) probs[b][b] = p_in;
  return sbm_generate(std::vector<std::size_t>(blocks, nodes_per_block), probs, seed);
}

Partition planted_blocks(std::size_t blocks, std::size_t nodes_per_block) {
  std::vector<std::size_t> ids(blocks * nodes_per_block);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i / nodes_per_block;
  return Partition(std::move(ids));
}

}  // namespace specabs
