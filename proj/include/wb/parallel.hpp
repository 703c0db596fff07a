#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace wb {

/// Worker count: explicit request, else WORKBENCH_THREADS, else 1.
inline unsigned worker_count(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WORKBENCH_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each.
/// Chunking is fixed by n and threads alone, so any fn writing disjoint
/// slots yields identical results at every thread count.
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
  threads = worker_count(threads);
  if (threads <= 1 || n < 4096) {
    fn(std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t lo = t * chunk;
    if (lo >= n) break;
    std::uint64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

} // namespace wb
