#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "royale/core.hpp"

namespace royale {

struct AggregateStats {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation, divisor n-1; 0 for n=1
  double median = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double mean_elapsed_seconds = 0.0;
  int n_runs = 0;
};

namespace detail {

// Accumulating over sorted values makes every statistic independent of input
// order, bit for bit, so shuffled batches aggregate identically.
inline double sorted_mean(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Summary of a batch of runs over their final best_fitness values.
inline AggregateStats aggregate(std::span<const RunResult> results) {
  if (results.empty()) throw std::invalid_argument("aggregate: no runs to aggregate");
  const std::size_t n = results.size();
  std::vector<double> bests(n), elapsed(n);
  for (std::size_t i = 0; i < n; ++i) {
    bests[i] = results[i].best_fitness;
    elapsed[i] = results[i].elapsed_seconds;
  }
  AggregateStats out;
  out.n_runs = static_cast<int>(n);
  out.mean = detail::sorted_mean(bests);  // sorts bests as a side effect
  out.mean_elapsed_seconds = detail::sorted_mean(elapsed);
  out.best = bests.front();
  out.worst = bests.back();
  out.median = n % 2 == 1 ? bests[n / 2] : (bests[n / 2 - 1] + bests[n / 2]) / 2.0;
  if (n > 1) {
    double ss = 0.0;
    for (double x : bests) ss += (x - out.mean) * (x - out.mean);
    out.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace royale
