#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mifs {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

// Fork-join over [0, n) in contiguous chunks. Exceptions from workers are
// rethrown on the calling thread (first one wins).
inline void parallel_for(uint64_t n, int workers,
                         const std::function<void(uint64_t, uint64_t)>& fn) {
  int w = resolve_workers(workers);
  if (w <= 1 || n <= 1) {
    fn(0, n);
    return;
  }
  uint64_t chunk = (n + uint64_t(w) - 1) / uint64_t(w);
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> threads;
  for (int t = 0; t < w; ++t) {
    uint64_t b = uint64_t(t) * chunk;
    if (b >= n) break;
    uint64_t e = std::min(n, b + chunk);
    threads.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace mifs
