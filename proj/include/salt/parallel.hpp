#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace salt {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(worker, i) for every i in [0, count); work is claimed dynamically.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = next++; i < count; i = next++) fn(w, i);
    });
}

}  // namespace salt
