#include "specabs/partition_type.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "specabs/error.hpp"

namespace specabs {

Partition::Partition(std::vector<std::size_t> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) return;
  k_ = *std::max_element(assignment_.begin(), assignment_.end()) + 1;
  std::vector<bool> used(k_, false);
  for (std::size_t id : assignment_) used[id] = true;
  for (std::size_t c = 0; c < k_; ++c) {
    if (!used[c]) {
      throw Error(ErrorCode::InvalidPartition, "cluster id " + std::to_string(c) + " has no members");
    }
  }
}

Partition Partition::identity(std::size_t n) {
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return Partition(std::move(ids));
}

Partition Partition::single(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0)); }

std::vector<std::vector<std::size_t>> Partition::clusters() const {
  std::vector<std::vector<std::size_t>> out(k_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) out[assignment_[i]].push_back(i);
  return out;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (std::size_t id : assignment_) ++sizes[id];
  return sizes;
}

Partition Partition::canonical() const {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> remap(k_, unset);
  std::vector<std::size_t> ids(assignment_.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    std::size_t& target = remap[assignment_[i]];
    if (target == unset) target = next++;
    ids[i] = target;
  }
  return Partition(std::move(ids));
}

}  // namespace specabs
