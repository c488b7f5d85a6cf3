#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace relax {

// Runs jobs(0..count-1) on up to `threads` workers. Results must be written to
// pre-sized slots indexed by the job id so assembly stays deterministic.
inline void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      job(i);
    }
  };
  std::vector<std::thread> pool;
  const int k = std::min(threads, count);
  pool.reserve(k);
  for (int t = 0; t < k; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace relax
