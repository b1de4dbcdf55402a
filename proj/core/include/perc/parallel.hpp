#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace perc {

/// Global cap on worker threads, set once by the CLI's --threads flag.
/// Defaults to single-threaded; results are identical for any value.
inline int& max_threads() {
  static int value = 1;
  return value;
}

inline void set_max_threads(int n) { max_threads() = n < 1 ? 1 : n; }

/// Number of workers parallel_for will use for n items.
inline int worker_count(std::uint64_t n) {
  int workers = max_threads();
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > n && n > 0) workers = static_cast<int>(n);
  return workers;
}

/// Runs fn(i, worker) for i in [0, n). Work is partitioned into contiguous
/// blocks per worker; fn must only write to state indexed by i or into
/// per-worker accumulators (indexed by the passed worker id), so results are
/// independent of the thread count.
inline void parallel_for(std::uint64_t n,
                         const std::function<void(std::uint64_t, int)>& fn) {
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    std::uint64_t lo = n * w / workers;
    std::uint64_t hi = n * (w + 1) / workers;
    pool.emplace_back([lo, hi, w, &fn] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace perc
