#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace diqsdc {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Accumulates `body(acc, i)` over i in [0, n) into thread-local copies of
/// `init` and merges them in index order. Each index must depend only on its
/// own derived RNG stream, so the result is identical for any thread count.
template <typename Acc, typename Body, typename Merge>
Acc parallel_index_reduce(std::size_t n, unsigned threads, Acc init, Body body, Merge merge) {
  threads = resolve_threads(threads);
  if (threads <= 1 || n < 4096) {
    Acc acc = init;
    for (std::size_t i = 0; i < n; ++i) body(acc, i);
    return acc;
  }
  std::vector<Acc> partial(threads, init);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t lo = static_cast<std::size_t>(t) * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) body(partial[t], i);
    });
  }
  for (auto& th : pool) th.join();
  Acc acc = init;
  for (unsigned t = 0; t < threads; ++t) merge(acc, partial[t]);
  return acc;
}

}  // namespace diqsdc
