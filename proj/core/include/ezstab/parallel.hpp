#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ezstab {

// Worker count resolution: explicit hint > EZSTAB_WORKERS env > hardware.
inline int resolve_workers(int hint) {
  if (hint > 0) return hint;
  if (const char* env = std::getenv("EZSTAB_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Static chunking of [0, count) across workers. Work items must be
// independent; results may only be written to disjoint slots so the
// partition cannot affect values.
inline void parallel_for(std::int64_t count, int workers,
                         const std::function<void(std::int64_t, std::int64_t)>& run_range) {
  workers = resolve_workers(workers);
  if (count <= 0) return;
  if (workers <= 1 || count == 1) {
    run_range(0, count);
    return;
  }
  int n_threads = static_cast<int>(std::min<std::int64_t>(workers, count));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::int64_t chunk = (count + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    std::int64_t lo = t * chunk;
    std::int64_t hi = std::min<std::int64_t>(lo + chunk, count);
    if (lo >= hi) break;
    pool.emplace_back([&run_range, lo, hi] { run_range(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ezstab
