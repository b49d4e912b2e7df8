#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace klein4 {

inline int default_threads() { return int(std::max(1u, std::thread::hardware_concurrency())); }

/// Runs fn(i) for i in [0, count) on contiguous blocks. Results must be
/// written to per-index storage so that the outcome does not depend on the
/// thread count. The first exception thrown by a worker is rethrown.
template <class F>
void parallel_for(std::size_t count, int threads, F&& fn) {
  const std::size_t t = std::min<std::size_t>(threads > 0 ? std::size_t(threads) : 1, std::max<std::size_t>(count, 1));
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  const std::size_t block = (count + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(count, (w + 1) * block); ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise summation in a fixed order.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace klein4
