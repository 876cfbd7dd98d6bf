#pragma once

#include <cstddef>
#include <functional>

namespace specabs {

/// Worker cap taken from SPECTRAL_ABSTRACTION_THREADS (unset or invalid means
/// hardware concurrency). Always at least 1.
std::size_t thread_limit();

/// Runs body(i) for i in [0, count) on up to thread_limit() threads. Each
/// index is handled exactly once; callers write results to per-index slots so
/// the outcome never depends on scheduling. If tasks throw, the exception of the
/// lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace specabs
