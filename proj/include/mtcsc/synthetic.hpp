#pragma once

// Seeded synthetic series used by the benchmark command and the tests.

#include <cstdint>
#include <random>

#include "mtcsc/core.hpp"

namespace mtcsc::synthetic {

namespace detail {

inline double reflect(double v, double lo, double hi) {
  while (v < lo || v > hi) v = v > hi ? 2.0 * hi - v : 2.0 * lo - v;
  return v;
}

template <class StepScale>
TimeSeries walk(std::size_t n, std::size_t dim, StepScale scale, std::uint64_t seed, double lo,
                double hi) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TimeSeries ts;
  ts.points.reserve(n);
  std::vector<double> x(dim, 0.5 * (lo + hi));
  std::vector<double> dir(dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      double norm = 0.0;
      for (auto& d : dir) {
        d = gauss(rng);
        norm += d * d;
      }
      norm = std::sqrt(norm);
      const double len = scale(i) * unit(rng);
      for (std::size_t l = 0; l < dim; ++l)
        x[l] = reflect(x[l] + (norm > 0.0 ? dir[l] / norm * len : 0.0), lo, hi);
    }
    ts.push_back({static_cast<double>(i), x});
  }
  return ts;
}

}  // namespace detail

/// Random walk on a unit time grid, reflected into [lo, hi] per dimension.
/// Step lengths are uniform in [0, max_step]; reflection never lengthens a
/// step, so the clean series never exceeds speed max_step.
inline TimeSeries bounded_walk(std::size_t n, std::size_t dim, double max_step, std::uint64_t seed,
                               double lo = 0.0, double hi = 100.0) {
  return detail::walk(n, dim, [=](std::size_t) { return max_step; }, seed, lo, hi);
}

/// Bounded walk whose step scale is multiplied by `factor` from index n/2 on.
inline TimeSeries two_regime_walk(std::size_t n, std::size_t dim, double max_step, double factor,
                                  std::uint64_t seed, double lo = 0.0, double hi = 100.0) {
  const std::size_t half = n / 2;
  return detail::walk(
      n, dim, [=](std::size_t i) { return i < half ? max_step : max_step * factor; }, seed, lo, hi);
}

}  // namespace mtcsc::synthetic
