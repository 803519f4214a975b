#pragma once

// Adaptive speed constraint. Consecutive-point speeds are collected into two
// adjacent monitoring windows; when the KL divergence between their bucketed
// distributions exceeds a threshold, s_max is re-estimated from the newer
// window's 95th percentile.

#include <cstdint>
#include <deque>

#include "mtcsc/cluster.hpp"

namespace mtcsc {

/// b buckets over [0, s]: b - 1 closed-right buckets of width s / (b - 1)
/// plus an overflow bucket (s, +inf).
struct SpeedHistogram {
  std::vector<std::uint64_t> bucket_counts;
  double bucket_width = 0.0;
  double s_max = 0.0;

  std::size_t buckets() const noexcept { return bucket_counts.size(); }
  std::uint64_t total() const noexcept {
    std::uint64_t t = 0;
    for (auto c : bucket_counts) t += c;
    return t;
  }

  friend bool operator==(const SpeedHistogram&, const SpeedHistogram&) = default;
};

struct AdaptiveParams {
  std::size_t buckets = 6;
  double tau = 0.75;
  std::size_t interval = 150;
  double beta = 0.75;

  void check() const {
    if (buckets < 2) throw InputError("adaptive: bucket count must be >= 2");
    if (!(tau > 0.0)) throw InputError("adaptive: tau must be positive");
    if (interval < 1) throw InputError("adaptive: monitoring interval must be >= 1");
    if (!(beta > 0.0 && beta <= 1.0)) throw InputError("adaptive: beta must be in (0, 1]");
  }
};

inline std::size_t bucket_of(double v, std::size_t b, double s) {
  if (v > s) return b - 1;
  const double width = s / static_cast<double>(b - 1);
  if (v <= width) return 0;
  auto idx = static_cast<std::size_t>(std::ceil(v / width)) - 1;
  if (idx > b - 2) idx = b - 2;
  // ceil() can land one bucket off when v sits on an edge.
  if (idx > 0 && v <= static_cast<double>(idx) * width) --idx;
  if (idx < b - 2 && v > static_cast<double>(idx + 1) * width) ++idx;
  return idx;
}

template <class Range>
SpeedHistogram update_distribution(const Range& speeds, std::size_t b, double s) {
  if (b < 2) throw InputError("update_distribution: need at least 2 buckets");
  if (!(s > 0.0)) throw InputError("update_distribution: s must be positive");
  SpeedHistogram h{std::vector<std::uint64_t>(b, 0), s / static_cast<double>(b - 1), s};
  for (double v : speeds) {
    if (v < 0.0 || std::isnan(v)) throw InputError("update_distribution: negative speed");
    ++h.bucket_counts[bucket_of(v, b, s)];
  }
  return h;
}

/// KL(p || q) in nats over probability vectors. Terms with p = 0 vanish;
/// q = 0 under p > 0 is replaced by `epsilon`.
inline double kl_divergence(std::span<const double> p, std::span<const double> q,
                            double epsilon) {
  if (p.size() != q.size()) throw InputError("kl_divergence: bucket count mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    const double qi = q[i] > 0.0 ? q[i] : epsilon;
    d += p[i] * std::log(p[i] / qi);
  }
  return d;
}

inline std::vector<double> normalized(const SpeedHistogram& h) {
  const double total = static_cast<double>(h.total());
  std::vector<double> p(h.buckets());
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = static_cast<double>(h.bucket_counts[i]) / total;
  return p;
}

inline double kl_divergence(const SpeedHistogram& h1, const SpeedHistogram& h2, double epsilon) {
  if (h1.buckets() != h2.buckets()) throw InputError("kl_divergence: bucket count mismatch");
  if (h1.total() == 0 || h2.total() == 0) throw InputError("kl_divergence: empty histogram");
  return kl_divergence(normalized(h1), normalized(h2), epsilon);
}

/// Default smoothing 1 / (N2 * b); N2 is the monitoring interval when both
/// windows are full.
inline double kl_divergence(const SpeedHistogram& h1, const SpeedHistogram& h2) {
  if (h2.total() == 0) throw InputError("kl_divergence: empty histogram");
  return kl_divergence(h1, h2,
                       1.0 / (static_cast<double>(h2.total()) * static_cast<double>(h2.buckets())));
}

/// Nearest-rank 95th percentile: the ceil(0.95 n)-th smallest value.
template <class Range>
double percentile_95(const Range& speeds) {
  std::vector<double> v(std::begin(speeds), std::end(speeds));
  if (v.empty()) throw InputError("percentile_95: empty window");
  const std::size_t rank = (95 * v.size() + 99) / 100;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank - 1), v.end());
  return v[rank - 1];
}

struct ConstraintChange {
  double timestamp = 0.0;
  double s_max = 0.0;
};

struct KlSample {
  double timestamp = 0.0;
  double divergence = 0.0;
};

/// The two monitoring windows plus the current constraint.
class AdaptiveState {
public:
  AdaptiveState(SpeedConstraint initial, AdaptiveParams params)
      : current_(initial), params_(params) {
    params_.check();
    h1_ = update_distribution(w1_, params_.buckets, current_.s_max);
    h2_ = h1_;
  }

  const SpeedConstraint& current() const noexcept { return current_; }
  const AdaptiveParams& params() const noexcept { return params_; }
  const std::deque<double>& w1() const noexcept { return w1_; }
  const std::deque<double>& w2() const noexcept { return w2_; }
  const SpeedHistogram& h1() const noexcept { return h1_; }
  const SpeedHistogram& h2() const noexcept { return h2_; }
  const std::vector<ConstraintChange>& constraint_trace() const noexcept { return changes_; }
  const std::vector<KlSample>& kl_trace() const noexcept { return kl_; }

  /// One AdaptiveSpeed step fed with a precomputed speed.
  const SpeedConstraint& observe(double speed, double timestamp = 0.0) {
    const std::size_t m = params_.interval;
    const std::size_t b = params_.buckets;
    if (w1_.size() < m) {
      w1_.push_back(speed);
      h1_ = update_distribution(w1_, b, current_.s_max);
    } else if (w2_.size() < m) {
      w2_.push_back(speed);
      h2_ = update_distribution(w2_, b, current_.s_max);
    } else {
      const double d = kl_divergence(h1_, h2_);
      kl_.push_back({timestamp, d});
      if (d > params_.tau) {
        const double updated = percentile_95(w2_) / params_.beta;
        if (updated > 0.0 && updated != current_.s_max) {
          current_.s_max = updated;
          changes_.push_back({timestamp, updated});
        }
      }
      w1_.pop_front();
      w1_.push_back(w2_.front());
      w2_.pop_front();
      w2_.push_back(speed);
      h1_ = update_distribution(w1_, b, current_.s_max);
      h2_ = update_distribution(w2_, b, current_.s_max);
    }
    return current_;
  }

private:
  SpeedConstraint current_;
  AdaptiveParams params_;
  std::deque<double> w1_, w2_;
  SpeedHistogram h1_, h2_;
  std::vector<ConstraintChange> changes_;
  std::vector<KlSample> kl_;
};

/// Speed from the original observations prev -> key, then one monitor step.
inline SpeedConstraint adaptive_speed_step(AdaptiveState& state, const DataPoint& prev,
                                           const DataPoint& key) {
  if (!(prev.timestamp < key.timestamp))
    throw OrderingError("adaptive_speed_step: prev must precede key");
  return state.observe(speed(prev, key), key.timestamp);
}

/// Cluster-cleaner policy that runs the monitor before each key.
class AdaptiveSpeed {
public:
  AdaptiveSpeed(SpeedConstraint initial, AdaptiveParams params) : state_(initial, params) {}

  const SpeedConstraint& constraint() const noexcept { return state_.current(); }
  void on_key(const DataPoint& prev_original, const DataPoint& key) {
    adaptive_speed_step(state_, prev_original, key);
  }
  const AdaptiveState& state() const noexcept { return state_; }

private:
  AdaptiveState state_;
};

using AdaptiveCleaner = BasicClusterCleaner<AdaptiveSpeed>;

struct AdaptiveRepair {
  RepairResult result;
  std::vector<ConstraintChange> constraint_trace;
  std::vector<KlSample> kl_trace;
};

/// MTCSC-A, keeping the constraint and KL traces.
inline AdaptiveRepair mtcsc_a_traced(const TimeSeries& ts, const SpeedConstraint& c0,
                                     const AdaptiveParams& params) {
  require_valid(ts);
  detail::Stopwatch clock;
  AdaptiveCleaner cleaner{AdaptiveSpeed(c0, params)};
  TimeSeries out = detail::run_cleaner(cleaner, ts);
  const auto elapsed = clock.elapsed();
  const AdaptiveState& st = cleaner.policy().state();
  return {summarize(ts, std::move(out), elapsed), st.constraint_trace(), st.kl_trace()};
}

inline RepairResult mtcsc_a(const TimeSeries& ts, const SpeedConstraint& c0,
                            const AdaptiveParams& params) {
  return mtcsc_a_traced(ts, c0, params).result;
}

}  // namespace mtcsc
