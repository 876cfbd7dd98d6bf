#include "specabs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace specabs {

std::size_t thread_limit() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SPECTRAL_ABSTRACTION_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) return hw;
  return static_cast<std::size_t>(value);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::min(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(count);
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace specabs
