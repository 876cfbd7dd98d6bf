#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specabs {

/// Hard assignment of n nodes to k clusters. Cluster ids run 0..k-1 and every
/// id is used by at least one node.
class Partition {
 public:
  Partition() = default;

  /// k is taken as max(id) + 1. Throws InvalidPartition if an id in 0..k-1 is
  /// unused.
  explicit Partition(std::vector<std::size_t> assignment);

  /// Every node in its own cluster, cluster id == node index.
  static Partition identity(std::size_t n);
  /// All nodes in cluster 0.
  static Partition single(std::size_t n);

  std::size_t size() const noexcept { return assignment_.size(); }
  std::size_t cluster_count() const noexcept { return k_; }
  std::span<const std::size_t> assignment() const noexcept { return assignment_; }
  std::size_t operator[](std::size_t node) const { return assignment_[node]; }

  /// Member lists per cluster, each sorted ascending.
  std::vector<std::vector<std::size_t>> clusters() const;
  std::vector<std::size_t> cluster_sizes() const;

  /// Same grouping with ids renumbered in order of first appearance.
  Partition canonical() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t k_ = 0;
};

}  // namespace specabs
