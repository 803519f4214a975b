#pragma once

// Error injection, evaluation metrics and the EWMA smoothing baseline.

#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>

#include "mtcsc/core.hpp"

namespace mtcsc {

enum class ErrorPattern { Together, Separate };

inline const char* to_string(ErrorPattern p) {
  return p == ErrorPattern::Together ? "together" : "separate";
}

inline ErrorPattern parse_pattern(const std::string& s) {
  if (s == "together") return ErrorPattern::Together;
  if (s == "separate") return ErrorPattern::Separate;
  throw InputError("unknown error pattern '" + s + "' (expected together|separate)");
}

struct ErrorSpec {
  double rate = 0.0;
  ErrorPattern pattern = ErrorPattern::Together;
  std::uint64_t seed = 0;
  // Per-dimension (min, max). Left empty, it is taken from the truth series.
  std::vector<std::pair<double, double>> value_range;
};

struct InjectedError {
  std::size_t index = 0;
  std::size_t dimension = 0;

  friend bool operator==(const InjectedError&, const InjectedError&) = default;
  friend auto operator<=>(const InjectedError&, const InjectedError&) = default;
};

struct Injection {
  TimeSeries dirty;
  std::vector<InjectedError> errors;  // sorted by (index, dimension)
};

inline std::vector<std::pair<double, double>> value_range(const TimeSeries& ts) {
  std::vector<std::pair<double, double>> r(ts.dimension(), {INFINITY, -INFINITY});
  for (const auto& p : ts)
    for (std::size_t l = 0; l < r.size(); ++l) {
      r[l].first = std::min(r[l].first, p.values[l]);
      r[l].second = std::max(r[l].second, p.values[l]);
    }
  return r;
}

inline std::size_t error_budget(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::floor(rate * static_cast<double>(n) + 1e-9));
}

/// Replaces values of randomly chosen points with uniform draws from each
/// dimension's range. "together" corrupts every dimension of floor(rate n)
/// points; "separate" splits that budget over the dimensions, each point
/// hit in exactly one dimension.
inline Injection inject_errors(const TimeSeries& truth, const ErrorSpec& spec) {
  if (truth.empty()) throw InputError("inject_errors: empty series");
  if (!(spec.rate >= 0.0 && spec.rate <= 1.0))
    throw InputError("inject_errors: rate must be in [0, 1]");
  const std::size_t n = truth.size();
  const std::size_t dim = truth.dimension();
  auto range = spec.value_range.empty() ? value_range(truth) : spec.value_range;
  if (range.size() != dim) throw DimensionError("inject_errors: value_range arity mismatch");
  for (const auto& [lo, hi] : range)
    if (lo > hi) throw InputError("inject_errors: value_range min > max");

  std::mt19937_64 rng(spec.seed);
  const std::size_t budget = error_budget(spec.rate, n);

  // Partial Fisher-Yates: the first `budget` entries are a uniform sample.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < budget; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }

  Injection out{truth, {}};
  auto draw = [&](std::size_t l) {
    std::uniform_real_distribution<double> u(range[l].first, range[l].second);
    return u(rng);
  };
  if (spec.pattern == ErrorPattern::Together) {
    for (std::size_t k = 0; k < budget; ++k)
      for (std::size_t l = 0; l < dim; ++l) {
        out.dirty[order[k]].values[l] = draw(l);
        out.errors.push_back({order[k], l});
      }
  } else {
    const std::size_t base = budget / dim;
    const std::size_t extra = budget % dim;
    std::size_t k = 0;
    for (std::size_t l = 0; l < dim; ++l) {
      const std::size_t share = base + (l < extra ? 1 : 0);
      for (std::size_t s = 0; s < share; ++s, ++k) {
        out.dirty[order[k]].values[l] = draw(l);
        out.errors.push_back({order[k], l});
      }
    }
  }
  std::sort(out.errors.begin(), out.errors.end());
  return out;
}

namespace detail {

inline void require_aligned(const TimeSeries& a, const TimeSeries& b, const char* who) {
  if (a.size() != b.size())
    throw InputError(std::string(who) + ": length mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
  if (a.dimension() != b.dimension()) throw DimensionError(std::string(who) + ": dimension mismatch");
}

}  // namespace detail

inline double rmse(const TimeSeries& repaired, const TimeSeries& truth) {
  detail::require_aligned(repaired, truth, "rmse");
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = distance(repaired[i], truth[i]);
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

/// Mean per-point Euclidean distance between two versions of a series.
inline double repair_distance(const TimeSeries& repaired, const TimeSeries& original) {
  detail::require_aligned(repaired, original, "repair_distance");
  if (original.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) sum += distance(repaired[i], original[i]);
  return sum / static_cast<double>(original.size());
}

struct RepairNumber {
  std::size_t count = 0;
  double fraction = 0.0;
};

inline RepairNumber repair_number(const TimeSeries& repaired, const TimeSeries& original) {
  detail::require_aligned(repaired, original, "repair_number");
  RepairNumber r;
  for (std::size_t i = 0; i < original.size(); ++i)
    if (repaired[i].values != original[i].values) ++r.count;
  r.fraction = original.empty() ? 0.0 : static_cast<double>(r.count) / static_cast<double>(original.size());
  return r;
}

/// y_1 = x_1, y_i = alpha x_i + (1 - alpha) y_{i-1}, per dimension.
inline TimeSeries ewma(const TimeSeries& ts, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("ewma: alpha must be in (0, 1]");
  if (ts.empty()) throw InputError("ewma: empty series");
  TimeSeries out = ts;
  for (std::size_t i = 1; i < out.size(); ++i)
    for (std::size_t l = 0; l < out[i].values.size(); ++l)
      out[i].values[l] = out[i - 1].values[l] + alpha * (ts[i].values[l] - out[i - 1].values[l]);
  return out;
}

struct EvalReport {
  double rmse = 0.0;
  double repair_distance = 0.0;
  double repair_number = 0.0;  // fraction
  std::size_t repair_count = 0;
  std::chrono::nanoseconds time{0};
};

inline EvalReport evaluate(const TimeSeries& truth, const TimeSeries& dirty,
                           const RepairResult& result) {
  EvalReport r;
  r.rmse = rmse(result.repaired, truth);
  r.repair_distance = repair_distance(result.repaired, dirty);
  const auto num = repair_number(result.repaired, dirty);
  r.repair_number = num.fraction;
  r.repair_count = num.count;
  r.time = result.elapsed;
  return r;
}

}  // namespace mtcsc
