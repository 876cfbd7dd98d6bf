#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "specabs/graph.hpp"
#include "specabs/partition_type.hpp"

namespace specabs {

/// Planted-partition generator: k blocks of m nodes, unit weights. Node i
/// belongs to block i / m. Requires 0 <= p_out <= p_in <= 1, k >= 2, m >= 2.
Graph sbm_generate(std::size_t blocks, std::size_t nodes_per_block, double p_in, double p_out,
                   std::uint64_t seed);

/// General block model: block b has block_sizes[b] consecutive nodes and each
/// pair in blocks (a, b) is joined with probability probabilities[a][b].
/// The matrix must be symmetric with entries in [0, 1].
Graph sbm_generate(const std::vector<std::size_t>& block_sizes,
                   const std::vector<std::vector<double>>& probabilities, std::uint64_t seed);

/// Ground-truth partition for the equal-block generator.
Partition planted_blocks(std::size_t blocks, std::size_t nodes_per_block);

/// Uniform doubles in [0, 1) built from the top 53 bits of mt19937_64 draws.
/// Unlike std::uniform_real_distribution the sequence is identical across
/// standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform index in [0, bound) by rejection.
  std::size_t below(std::size_t bound);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace specabs
