#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rispace {

/// Environment variable holding the worker count (positive integer, 1 = serial).
inline constexpr const char* kWorkersEnv = "RISPACE_WORKERS";

/// Worker count from RISPACE_WORKERS, else the hardware concurrency.
/// Throws std::invalid_argument if the variable is set but not a positive integer.
std::size_t worker_count();

/// Calls fn(i) exactly once for every i in [0, count). Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
/// The first exception thrown by any call is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rispace
