#pragma once

// Online local repair. Each arriving point becomes the key exactly once and
// is decided against the last finalized point, looking ahead at most one
// window for an interpolation anchor.

#include <deque>
#include <optional>
#include <utility>

#include "mtcsc/core.hpp"

namespace mtcsc {

class LocalCleaner {
public:
  explicit LocalCleaner(SpeedConstraint c) : constraint_(c) {}

  const SpeedConstraint& constraint() const noexcept { return constraint_; }
  const std::optional<DataPoint>& last_fixed() const noexcept { return last_fixed_; }
  const std::optional<DataPoint>& pending_key() const noexcept { return pending_; }
  const std::deque<DataPoint>& lookahead() const noexcept { return lookahead_; }

  /// Feeds one observation; returns the points finalized by it, in order.
  std::vector<DataPoint> push(DataPoint p) {
    if (last_pushed_ && !(p.timestamp > *last_pushed_))
      throw OrderingError("LocalCleaner::push: timestamp " + std::to_string(p.timestamp) +
                          " does not follow " + std::to_string(*last_pushed_));
    if (dimension_ == 0) dimension_ = p.values.size();
    if (p.values.size() != dimension_) throw DimensionError("LocalCleaner::push: arity mismatch");
    last_pushed_ = p.timestamp;

    std::vector<DataPoint> out;
    std::deque<DataPoint> queue;
    queue.push_back(std::move(p));
    drain(queue, out);
    return out;
  }

  /// End of stream: a pending key with no anchor keeps the previous fixed
  /// values, then the buffered points are decided with what is left.
  std::vector<DataPoint> flush() {
    std::vector<DataPoint> out;
    while (pending_) {
      finalize(DataPoint{pending_->timestamp, last_fixed_->values}, out);
      std::deque<DataPoint> queue = std::exchange(lookahead_, {});
      drain(queue, out);
    }
    return out;
  }

private:
  void drain(std::deque<DataPoint>& queue, std::vector<DataPoint>& out) {
    while (!queue.empty()) {
      DataPoint p = std::move(queue.front());
      queue.pop_front();

      if (!last_fixed_) {
        finalize(std::move(p), out);
        continue;
      }
      if (!pending_) {
        if (satisfies(p, *last_fixed_, constraint_))
          finalize(std::move(p), out);
        else
          pending_ = std::move(p);
        continue;
      }

      // Anchor search for the pending key, one candidate at a time.
      const bool expired = p.timestamp > pending_->timestamp + constraint_.window;
      const bool anchor = !expired && within_speed(p, *last_fixed_, constraint_);
      lookahead_.push_back(std::move(p));
      if (!expired && !anchor) continue;

      if (anchor)
        finalize(interpolate(*last_fixed_, pending_->timestamp, lookahead_.back()), out);
      else
        finalize(DataPoint{pending_->timestamp, last_fixed_->values}, out);
      // Buffered points re-enter as keys ahead of anything not yet seen.
      for (auto it = lookahead_.rbegin(); it != lookahead_.rend(); ++it)
        queue.push_front(std::move(*it));
      lookahead_.clear();
    }
  }

  void finalize(DataPoint p, std::vector<DataPoint>& out) {
    pending_.reset();
    last_fixed_ = p;
    out.push_back(std::move(p));
  }

  SpeedConstraint constraint_;
  std::optional<DataPoint> last_fixed_;
  std::optional<DataPoint> pending_;
  std::deque<DataPoint> lookahead_;
  std::optional<double> last_pushed_;
  std::size_t dimension_ = 0;
};

/// MTCSC-L over a whole series: push everything, then flush.
inline RepairResult mtcsc_l(const TimeSeries& ts, const SpeedConstraint& c) {
  require_valid(ts);
  detail::Stopwatch clock;
  LocalCleaner cleaner(c);
  TimeSeries out;
  out.points.reserve(ts.size());
  for (const DataPoint& p : ts)
    for (DataPoint& q : cleaner.push(p)) out.push_back(std::move(q));
  for (DataPoint& q : cleaner.flush()) out.push_back(std::move(q));
  const auto elapsed = clock.elapsed();
  return summarize(ts, std::move(out), elapsed);
}

}  // namespace mtcsc
