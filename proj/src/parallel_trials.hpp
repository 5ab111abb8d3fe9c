// SPDX-License-Identifier: Apache-2.0
//
// Internal helper: runs per-trial kernels over worker threads with a fixed
// block partition. Each trial writes its own slot, and the reduction walks
// the slots in index order, so results do not depend on the worker count.

#pragma once

#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

#include "rtri/estimation.hpp"

namespace rtri::detail {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// kernel(trial_index) -> double, evaluated for trial_index in [0, trials).
template <typename Kernel>
std::vector<double> run_trials(int trials, int workers, const Kernel& kernel) {
  workers = resolve_workers(workers);
  std::vector<double> values(static_cast<std::size_t>(trials));
  if (workers <= 1 || trials < 2 * workers) {
    for (int k = 0; k < trials; ++k) values[static_cast<std::size_t>(k)] = kernel(k);
    return values;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const int block = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * block;
    const int end = std::min(trials, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&values, &kernel, begin, end] {
      for (int k = begin; k < end; ++k) values[static_cast<std::size_t>(k)] = kernel(k);
    });
  }
  for (auto& t : pool) t.join();
  return values;
}

/// Mean and standard error of a trial vector, reduced in index order.
inline MonteCarloStats reduce_stats(const std::vector<double>& values) {
  MonteCarloStats stats;
  const std::size_t n = values.size();
  if (n == 0) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - stats.mean;
      ss += d * d;
    }
    const double sample_var = ss / static_cast<double>(n - 1);
    stats.std_err = std::sqrt(sample_var / static_cast<double>(n));
  }
  return stats;
}

}  // namespace rtri::detail
