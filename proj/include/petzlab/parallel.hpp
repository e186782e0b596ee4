#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace petzlab {

//=========================================================================
// Deterministic parallel loops
//=========================================================================
//
// Work items are independent and write only to their own index, so any
// partition over threads yields the same result; reductions happen
// afterwards in fixed order. PETZ_LAB_THREADS overrides the worker count
// (results must not depend on it, and tests run with several values).

inline std::size_t worker_count() {
  if (const char *env = std::getenv("PETZ_LAB_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 256)
      return std::size_t(v);
  }
  const std::size_t n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn &&fn) {
  const std::size_t workers = std::min(worker_count(), n == 0 ? 1 : n);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn]() {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::size_t i = 0; i < std::min(chunk, n); ++i) fn(i);
  for (std::thread &t : pool) t.join();
}

//=========================================================================
// Order-independent summation
//=========================================================================

// Pairwise sum over a contiguous range; the reduction tree depends only on
// the element count, so the result is independent of how the values were
// produced.
inline double pairwise_sum(const double *xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs, half) + pairwise_sum(xs + half, n - half);
}

inline double pairwise_sum(const std::vector<double> &xs) {
  return pairwise_sum(xs.data(), xs.size());
}

}  // namespace petzlab
