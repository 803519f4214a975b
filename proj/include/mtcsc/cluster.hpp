#pragma once

// Cluster-guided online repair. For each key point the lookahead window is
// grouped into clusters of mutually compatible points; the seed of the
// largest cluster is the anchor used to repair the key.

#include <optional>
#include <utility>

#include "mtcsc/core.hpp"

namespace mtcsc {

/// Members are window-relative indices; the seed is the first of them.
struct WindowCluster {
  std::size_t seed_index = 0;
  std::vector<std::size_t> members;

  std::size_t size() const noexcept { return members.size(); }

  friend bool operator==(const WindowCluster&, const WindowCluster&) = default;
};

struct ClusterFlag {
  enum class Role { Omitted, Seed, Member };
  Role role = Role::Omitted;
  std::size_t seed = 0;  // meaningful for Member only

  friend bool operator==(const ClusterFlag&, const ClusterFlag&) = default;
};

struct ClusterBuild {
  std::vector<WindowCluster> clusters;  // ordered by seed index
  std::vector<ClusterFlag> flags;
};

/// Literal BuildCluster. `window` holds the points after the key (key
/// excluded). A point whose backward scan meets a compatible but omitted
/// point is left omitted.
inline ClusterBuild build_cluster_detailed(const DataPoint& prev_fixed,
                                           std::span<const DataPoint> window,
                                           const SpeedConstraint& c) {
  using Role = ClusterFlag::Role;
  ClusterBuild out;
  out.flags.assign(window.size(), ClusterFlag{});
  auto& f = out.flags;

  std::vector<std::optional<std::size_t>> slot(window.size());  // seed -> cluster position
  auto seed_at = [&](std::size_t i) {
    f[i] = {Role::Seed, i};
    slot[i] = out.clusters.size();
    out.clusters.push_back(WindowCluster{i, {i}});
  };
  auto join = [&](std::size_t i, std::size_t seed) {
    f[i] = {Role::Member, seed};
    out.clusters[*slot[seed]].members.push_back(i);
  };

  std::size_t first = window.size();
  for (std::size_t l = 0; l < window.size(); ++l) {
    if (within_speed(prev_fixed, window[l], c)) {
      first = l;
      seed_at(l);
      break;
    }
  }
  if (first == window.size()) return out;

  for (std::size_t i = first + 1; i < window.size(); ++i) {
    for (std::size_t j = i; j-- > first;) {
      if (satisfies(window[i], window[j], c)) {
        if (f[j].role == Role::Seed)
          join(i, j);
        else if (f[j].role == Role::Member)
          join(i, f[j].seed);
        break;
      }
      if (j == first || f[j].role == Role::Member) {
        if (within_speed(prev_fixed, window[i], c)) seed_at(i);
        break;
      }
    }
  }
  return out;
}

inline std::vector<WindowCluster> build_cluster(const DataPoint& prev_fixed,
                                                std::span<const DataPoint> window,
                                                const SpeedConstraint& c) {
  return build_cluster_detailed(prev_fixed, window, c).clusters;
}

/// Largest cluster; ties go to the earliest seed. Null when there are none.
inline const WindowCluster* largest_cluster(const std::vector<WindowCluster>& clusters) {
  const WindowCluster* best = nullptr;
  for (const auto& cl : clusters)
    if (!best || cl.size() > best->size()) best = &cl;
  return best;
}

/// Constraint policy with a fixed speed bound.
class FixedSpeed {
public:
  explicit FixedSpeed(SpeedConstraint c) : c_(c) {}
  const SpeedConstraint& constraint() const noexcept { return c_; }
  void on_key(const DataPoint& /*prev_original*/, const DataPoint& /*key*/) {}

private:
  SpeedConstraint c_;
};

/// Streaming cluster cleaner. A key is decided once a point beyond its
/// window arrives (or on flush), so latency is one window. `Policy` supplies
/// the constraint and is told about each key before its window is examined.
template <class Policy>
class BasicClusterCleaner {
public:
  explicit BasicClusterCleaner(Policy policy) : policy_(std::move(policy)) {}

  const Policy& policy() const noexcept { return policy_; }
  Policy& policy() noexcept { return policy_; }
  std::size_t buffered() const noexcept { return buf_.size() - head_; }

  std::vector<DataPoint> push(DataPoint p) {
    if (last_pushed_ && !(p.timestamp > *last_pushed_))
      throw OrderingError("ClusterCleaner::push: timestamp " + std::to_string(p.timestamp) +
                          " does not follow " + std::to_string(*last_pushed_));
    if (dimension_ == 0) dimension_ = p.values.size();
    if (p.values.size() != dimension_)
      throw DimensionError("ClusterCleaner::push: arity mismatch");
    last_pushed_ = p.timestamp;

    std::vector<DataPoint> out;
    if (!last_fixed_) {
      // The first point is taken as clean.
      prev_original_ = p;
      last_fixed_ = p;
      out.push_back(std::move(p));
      return out;
    }
    buf_.push_back(std::move(p));
    while (buffered() >= 2 &&
           buf_.back().timestamp > buf_[head_].timestamp + policy_.constraint().window)
      decide_front(out);
    return out;
  }

  std::vector<DataPoint> flush() {
    std::vector<DataPoint> out;
    while (buffered() > 0) decide_front(out);
    return out;
  }

private:
  void decide_front(std::vector<DataPoint>& out) {
    const DataPoint& key = buf_[head_];
    policy_.on_key(*prev_original_, key);
    const SpeedConstraint& c = policy_.constraint();

    std::size_t count = 0;
    while (head_ + 1 + count < buf_.size() &&
           buf_[head_ + 1 + count].timestamp <= key.timestamp + c.window)
      ++count;
    const std::span<const DataPoint> window(buf_.data() + head_ + 1, count);

    const auto clusters = build_cluster(*last_fixed_, window, c);
    const bool key_ok = satisfies(*last_fixed_, key, c);
    DataPoint fixed;
    if (const WindowCluster* best = largest_cluster(clusters)) {
      const DataPoint& anchor = window[best->seed_index];
      if (key_ok && satisfies(key, anchor, c))
        fixed = key;
      else
        fixed = interpolate(*last_fixed_, key.timestamp, anchor);
    } else {
      fixed = key_ok ? key : DataPoint{key.timestamp, last_fixed_->values};
    }

    prev_original_ = key;
    last_fixed_ = fixed;
    out.push_back(std::move(fixed));
    ++head_;
    if (head_ == buf_.size()) {
      buf_.clear();
      head_ = 0;
    } else if (head_ >= 1024 && head_ * 2 >= buf_.size()) {
      buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
      head_ = 0;
    }
  }

  Policy policy_;
  std::vector<DataPoint> buf_;
  std::size_t head_ = 0;
  std::optional<DataPoint> last_fixed_;
  std::optional<DataPoint> prev_original_;
  std::optional<double> last_pushed_;
  std::size_t dimension_ = 0;
};

using ClusterCleaner = BasicClusterCleaner<FixedSpeed>;

namespace detail {

template <class Policy>
TimeSeries run_cleaner(BasicClusterCleaner<Policy>& cleaner, const TimeSeries& ts) {
  TimeSeries out;
  out.points.reserve(ts.size());
  for (const DataPoint& p : ts)
    for (DataPoint& q : cleaner.push(p)) out.push_back(std::move(q));
  for (DataPoint& q : cleaner.flush()) out.push_back(std::move(q));
  return out;
}

}  // namespace detail

/// MTCSC-C over a whole series.
inline RepairResult mtcsc_c(const TimeSeries& ts, const SpeedConstraint& c) {
  require_valid(ts);
  detail::Stopwatch clock;
  ClusterCleaner cleaner{FixedSpeed(c)};
  TimeSeries out = detail::run_cleaner(cleaner, ts);
  const auto elapsed = clock.elapsed();
  return summarize(ts, std::move(out), elapsed);
}

}  // namespace mtcsc
