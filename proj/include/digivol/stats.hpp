#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace digivol {

/// Running (sum, sum of squares, count) fold; merging is plain addition.
struct MeanAccumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  void merge(const MeanAccumulator& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
    count += other.count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  /// Sample variance (n - 1 denominator).
  double variance() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  }
  double standard_error() const {
    return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Runs body(k) for k in [0, n) on up to hardware_concurrency threads. Each k
/// is handled exactly once; callers write results by index.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < n; k += workers) body(k);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace digivol
