#pragma once

// Data model shared by every cleaner: points, series, the speed constraint
// and the satisfy predicate.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtcsc {

/// Raised when two points (or a point and a series) disagree on arity.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a speed is requested between two points sharing a timestamp.
class InvalidPairError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by streaming cleaners when timestamps do not increase.
class OrderingError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Bad arguments or malformed input data.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct DataPoint {
  double timestamp = 0.0;
  std::vector<double> values;

  std::size_t dimension() const noexcept { return values.size(); }

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

/// Ordered multivariate observations. The container itself does not enforce
/// ordering; call validate() (or require_valid()) on untrusted input.
struct TimeSeries {
  std::vector<DataPoint> points;

  TimeSeries() = default;
  explicit TimeSeries(std::vector<DataPoint> pts) : points(std::move(pts)) {}

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  std::size_t dimension() const noexcept {
    return points.empty() ? 0 : points.front().dimension();
  }

  const DataPoint& operator[](std::size_t i) const { return points[i]; }
  DataPoint& operator[](std::size_t i) { return points[i]; }

  auto begin() const noexcept { return points.begin(); }
  auto end() const noexcept { return points.end(); }

  void push_back(DataPoint p) { points.push_back(std::move(p)); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Maximum speed s (distance units per second) enforced between any two
/// points at most `window` seconds apart. The minimum speed is fixed at 0.
struct SpeedConstraint {
  double s_max = 1.0;
  double window = 1.0;

  SpeedConstraint() = default;
  SpeedConstraint(double s, double w) : s_max(s), window(w) {
    if (!(s > 0.0) || !std::isfinite(s))
      throw InputError("speed constraint: s_max must be positive and finite");
    if (!(w > 0.0) || !std::isfinite(w))
      throw InputError("speed constraint: window must be positive and finite");
  }
};

struct RepairResult {
  TimeSeries repaired;
  std::vector<std::size_t> fixed_indices;
  std::size_t repair_count = 0;
  double repair_distance = 0.0;
  std::chrono::nanoseconds elapsed{0};
};

// Relative slack on the speed bound. Repairs built by interpolation land on
// the boundary and pick up one or two ulps of rounding.
inline constexpr double kSpeedTolerance = 1e-9;

inline double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DimensionError("distance: arity mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  double sum = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    const double d = a[l] - b[l];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline double distance(const DataPoint& a, const DataPoint& b) {
  return distance(std::span<const double>(a.values), std::span<const double>(b.values));
}

/// Speed between two points. Throws InvalidPairError on equal timestamps.
inline double speed(const DataPoint& a, const DataPoint& b) {
  const double dt = std::abs(b.timestamp - a.timestamp);
  if (dt == 0.0)
    throw InvalidPairError("speed: points share timestamp " + std::to_string(a.timestamp));
  return distance(a, b) / dt;
}

/// True when the speed between a and b is within s_max, regardless of how
/// far apart they are in time. Used when choosing interpolation anchors,
/// which may lie beyond one window from the preceding fixed point.
inline bool within_speed(const DataPoint& a, const DataPoint& b, const SpeedConstraint& c) {
  const double dt = std::abs(b.timestamp - a.timestamp);
  if (dt == 0.0)
    throw InvalidPairError("satisfies: points share timestamp " + std::to_string(a.timestamp));
  return distance(a, b) <= c.s_max * dt * (1.0 + kSpeedTolerance);
}

/// The satisfy predicate: pairs further apart than the window are
/// unconstrained, otherwise the speed must not exceed s_max.
inline bool satisfies(const DataPoint& a, const DataPoint& b, const SpeedConstraint& c) {
  if (a.values.size() != b.values.size())
    throw DimensionError("satisfies: arity mismatch");
  const double dt = std::abs(b.timestamp - a.timestamp);
  if (dt == 0.0)
    throw InvalidPairError("satisfies: points share timestamp " + std::to_string(a.timestamp));
  if (dt > c.window) return true;
  return distance(a, b) <= c.s_max * dt * (1.0 + kSpeedTolerance);
}

/// Eq. 5 style interpolation: the value at `t` on the segment from `prev`
/// (already fixed) to `anchor`.
inline DataPoint interpolate(const DataPoint& prev, double t, const DataPoint& anchor) {
  const double alpha = (t - prev.timestamp) / (anchor.timestamp - prev.timestamp);
  DataPoint out{t, std::vector<double>(prev.values.size())};
  for (std::size_t l = 0; l < prev.values.size(); ++l)
    out.values[l] = alpha * (anchor.values[l] - prev.values[l]) + prev.values[l];
  return out;
}

struct Violation {
  std::size_t index = 0;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Structural checks: arity, finiteness, strictly increasing timestamps.
inline std::vector<Violation> validate(const TimeSeries& ts) {
  std::vector<Violation> out;
  const std::size_t dim = ts.dimension();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const DataPoint& p = ts[i];
    if (p.values.empty())
      out.push_back({i, "empty value vector"});
    else if (p.values.size() != dim)
      out.push_back({i, "arity mismatch: expected " + std::to_string(dim) + ", got " +
                            std::to_string(p.values.size())});
    if (!std::isfinite(p.timestamp)) out.push_back({i, "non-finite timestamp"});
    if (std::any_of(p.values.begin(), p.values.end(), [](double v) { return !std::isfinite(v); }))
      out.push_back({i, "non-finite value"});
    if (i > 0 && !(p.timestamp > ts[i - 1].timestamp))
      out.push_back({i, "timestamp not increasing"});
  }
  return out;
}

inline void require_valid(const TimeSeries& ts) {
  const auto problems = validate(ts);
  if (!problems.empty())
    throw InputError("invalid series at index " + std::to_string(problems.front().index) + ": " +
                     problems.front().message);
}

/// Fills fixed_indices, repair_count and repair_distance by comparing the
/// repaired values with the input.
inline RepairResult summarize(const TimeSeries& input, TimeSeries repaired,
                              std::chrono::nanoseconds elapsed) {
  RepairResult r;
  double total = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (repaired[i].values != input[i].values) {
      r.fixed_indices.push_back(i);
      total += distance(repaired[i], input[i]);
    }
  }
  r.repair_count = r.fixed_indices.size();
  r.repair_distance = input.empty() ? 0.0 : total / static_cast<double>(input.size());
  r.repaired = std::move(repaired);
  r.elapsed = elapsed;
  return r;
}

namespace detail {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                                start_);
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

}  // namespace mtcsc
