#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace distil {

// Index-parallel loop over [0, n). Work items must be independent; callers
// keep determinism by writing results into per-index slots and seeding any
// randomness from the index, so the thread count never changes the outcome.
inline void parallel_for(long n, int workers, const std::function<void(long)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int used = static_cast<int>(std::min<long>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(used));
  for (int w = 0; w < used; ++w) {
    pool.emplace_back([&fn, n, used, w] {
      for (long i = w; i < n; i += used) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace distil
