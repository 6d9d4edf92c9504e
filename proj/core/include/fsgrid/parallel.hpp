#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fsgrid {

/// Effective worker count: `requested` if positive, otherwise the
/// FSGRID_WORKERS environment variable, otherwise hardware concurrency.
int resolve_workers(int requested);

/// Runs fn(i) for every i in [0, n) on up to `workers` threads, handing out
/// indices from a shared counter. Callers must write results to per-index
/// slots so the schedule cannot influence the output. The first exception
/// thrown by fn is rethrown on the calling thread once all workers finish.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  workers = resolve_workers(workers);
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n || failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fsgrid
