#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace wlmc {

inline unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(begin, end) over disjoint contiguous index ranges covering
/// [0, n). Workers own their ranges, so writes to per-index slots need no
/// synchronization; output bytes cannot depend on the thread count.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned n_threads, Fn&& fn) {
  if (n == 0) return;
  n_threads = std::max(1u, n_threads);
  const std::size_t max_workers = std::min<std::size_t>(n_threads, n);
  if (max_workers == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + max_workers - 1) / max_workers;
  std::vector<std::thread> workers;
  workers.reserve(max_workers);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(begin + chunk, n);
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace wlmc
