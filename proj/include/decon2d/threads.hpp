#ifndef DECON2D_THREADS_HPP
#define DECON2D_THREADS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace decon2d {

//! Worker count to use: `requested` if positive, else the DECON2D_THREADS
//! environment variable, else hardware concurrency (at least 1).
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DECON2D_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

//! Runs fn(lo, hi) over a static partition of [0, count) on `threads`
//! workers.  Results must be written to disjoint, preallocated slots so
//! the outcome is identical for every worker count.
template <class F>
void parallel_chunks(std::size_t count, int threads, F&& fn) {
  const int k = resolve_threads(threads);
  if (k <= 1 || count < 2) {
    if (count > 0) fn(std::size_t{0}, count);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(k), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t base = count / workers, extra = count % workers;
  std::size_t lo = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t hi = lo + base + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

}  // namespace decon2d

#endif
