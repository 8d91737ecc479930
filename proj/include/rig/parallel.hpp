#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace rig {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over [0, count) split into fixed-size chunks.
// The chunking depends only on `count`, not on the thread count, so any
// per-chunk state a caller keys on chunk boundaries stays reproducible.
template <typename Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count < 2) {
    if (count > 0) fn(std::uint64_t{0}, count);
    return;
  }
  std::uint64_t chunk = (count + static_cast<std::uint64_t>(threads) - 1) /
                        static_cast<std::uint64_t>(threads);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (std::uint64_t b = 0; b < count; b += chunk) {
    std::uint64_t e = std::min(count, b + chunk);
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rig
