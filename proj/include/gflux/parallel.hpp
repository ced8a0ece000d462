#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gflux {

// Splits [0, n) into contiguous blocks, one per worker.  Each index is
// processed by exactly one worker and results are written to disjoint
// locations by the callers, so the outcome is bit-identical for any number
// of threads.  The first exception thrown by a worker is rethrown here.
inline void parallel_for(int n, int threads,
                         const std::function<void(int)>& body) {
  if (threads <= 1 || n <= 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  int nw = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < nw; ++w) {
    int lo = static_cast<int>(static_cast<long long>(n) * w / nw);
    int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / nw);
    pool.emplace_back([lo, hi, &body, &error, &error_mutex] {
      try {
        for (int k = lo; k < hi; ++k) body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gflux
