#pragma once

// Shared fixtures and independent checkers for the test suites.

#include <cmath>
#include <cstdint>
#include <random>

#include "mtcsc/core.hpp"

namespace mtcsc::testing {

inline TimeSeries make_series(std::vector<double> ts, std::vector<std::vector<double>> values) {
  TimeSeries out;
  for (std::size_t i = 0; i < ts.size(); ++i) out.push_back({ts[i], values[i]});
  return out;
}

/// Seven points, t = 1..7, D = 2.
inline TimeSeries speed_example() {
  return make_series({1, 2, 3, 4, 5, 6, 7}, {{1, 1}, {1.8, 1.8}, {2.6, 1}, {3.4, 1}, {4.5, 1},
                                             {5.5, 1}, {6.4, 1}});
}

/// Eight points, t = 0..7, D = 2, used for the clustering walkthrough.
inline TimeSeries cluster_example() {
  return make_series({0, 1, 2, 3, 4, 5, 6, 7}, {{1, 1}, {1.8, 1.8}, {2.6, 2}, {3.5, 1}, {4.5, 1},
                                                {5.5, 0.5}, {6.5, 1}, {7.5, 1}});
}

struct PairViolation {
  std::size_t i = 0, j = 0;
  double speed = 0.0;
};

/// Direct O(n^2) scan of every pair with 0 < t_j - t_i <= w. Written
/// without the library predicate so it can check it.
inline std::vector<PairViolation> pairwise_violations(const TimeSeries& ts, double s, double w) {
  std::vector<PairViolation> out;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const double dt = ts[j].timestamp - ts[i].timestamp;
      if (dt > w) break;
      double sq = 0.0;
      for (std::size_t l = 0; l < ts[i].values.size(); ++l) {
        const double d = ts[i].values[l] - ts[j].values[l];
        sq += d * d;
      }
      if (std::sqrt(sq) > s * dt * (1.0 + 1e-9)) out.push_back({i, j, std::sqrt(sq) / dt});
    }
  return out;
}

struct RandomCase {
  TimeSeries series;
  SpeedConstraint constraint;
};

/// Small random instance: irregular timestamps, a smooth drift with some
/// points replaced by jumps. Roughly a third of the cases are left clean.
inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_n = 12, std::size_t max_dim = 3) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_n);
  std::uniform_int_distribution<std::size_t> d_dist(1, max_dim);
  std::uniform_real_distribution<double> gap(0.5, 2.0);
  std::uniform_real_distribution<double> step(-0.7, 0.7);
  std::uniform_real_distribution<double> jump(-6.0, 6.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> window(1.0, 8.0);

  const std::size_t n = n_dist(rng);
  const std::size_t dim = d_dist(rng);
  const double dirty_rate = unit(rng) < 0.33 ? 0.0 : 0.35 * unit(rng) + 0.05;
  RandomCase rc{TimeSeries{}, SpeedConstraint(1.0, window(rng))};
  double t = 0.0;
  std::vector<double> x(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = gap(rng);
    t += dt;
    for (auto& v : x) v += step(rng) * dt / std::sqrt(static_cast<double>(dim));
    DataPoint p{t, x};
    if (unit(rng) < dirty_rate)
      for (auto& v : p.values) v += jump(rng);
    rc.series.push_back(std::move(p));
  }
  return rc;
}

}  // namespace mtcsc::testing
