#pragma once

// Batch minimum-fix repair. The clean subsequence is found with a dynamic
// program in the style of longest-increasing-subsequence, then every other
// point is interpolated between its nearest clean neighbours.

#include <bit>
#include <cstdint>
#include <optional>

#include "mtcsc/core.hpp"

namespace mtcsc {

struct FixPlan {
  std::vector<std::size_t> fix_list;
  std::vector<std::size_t> clean_list;
  std::size_t chain_length = 0;
};

/// O(D n^2). dp[i] is the longest compatible chain ending at i; the first
/// index reaching the overall maximum ends the retained chain.
inline FixPlan find_fix_list(const TimeSeries& ts, const SpeedConstraint& c) {
  const std::size_t n = ts.size();
  FixPlan plan;
  if (n == 0) return plan;

  std::vector<std::size_t> dp(n, 1);
  std::vector<std::size_t> pre(n, SIZE_MAX);
  std::size_t max_len = 0;
  std::size_t end = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (dp[i] < dp[j] + 1 && satisfies(ts[i], ts[j], c)) {
        dp[i] = dp[j] + 1;
        pre[i] = j;
      }
    }
    if (dp[i] > max_len) {
      max_len = dp[i];
      end = i;
    }
  }

  std::vector<bool> clean(n, false);
  for (std::size_t k = 0, idx = end; k < max_len; ++k) {
    clean[idx] = true;
    idx = pre[idx];
  }
  for (std::size_t i = 0; i < n; ++i) (clean[i] ? plan.clean_list : plan.fix_list).push_back(i);
  plan.chain_length = max_len;
  return plan;
}

struct BruteForceResult {
  std::size_t min_fix = 0;
  std::vector<std::size_t> keep;
};

inline constexpr std::size_t kBruteForceLimit = 20;

/// Exhaustive search for the largest keep-set whose members pairwise satisfy
/// the constraint. Exponential; refuses series longer than kBruteForceLimit.
inline BruteForceResult brute_force_min_fix(const TimeSeries& ts, const SpeedConstraint& c) {
  const std::size_t n = ts.size();
  if (n > kBruteForceLimit)
    throw InputError("brute_force_min_fix: n = " + std::to_string(n) + " exceeds limit " +
                     std::to_string(kBruteForceLimit));
  BruteForceResult best;
  if (n == 0) return best;

  // compat[i] has bit j set when (i, j) satisfies c.
  std::vector<std::uint32_t> compat(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j || satisfies(ts[i], ts[j], c)) compat[i] |= (1u << j);

  std::uint32_t best_mask = 0;
  int best_size = -1;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 0;; ++mask) {
    const int size = std::popcount(mask);
    if (size > best_size) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i)
        if ((mask >> i) & 1u) ok = (compat[i] & mask) == mask;
      if (ok) {
        best_size = size;
        best_mask = mask;
      }
    }
    if (mask == full) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    if ((best_mask >> i) & 1u) best.keep.push_back(i);
  best.min_fix = n - best.keep.size();
  return best;
}

/// Repairs each fixed index by interpolating between its nearest clean
/// neighbours. With only one neighbour available the value is copied from it.
inline RepairResult repair_by_fix_list(const TimeSeries& ts, const FixPlan& plan,
                                       const SpeedConstraint& /*c*/) {
  detail::Stopwatch clock;
  TimeSeries out = ts;
  const auto& clean = plan.clean_list;
  if (!clean.empty()) {
    std::size_t next = 0;  // first clean position with index > f
    for (std::size_t f : plan.fix_list) {
      while (next < clean.size() && clean[next] < f) ++next;
      const std::optional<std::size_t> before =
          next > 0 ? std::optional<std::size_t>(clean[next - 1]) : std::nullopt;
      const std::optional<std::size_t> after =
          next < clean.size() ? std::optional<std::size_t>(clean[next]) : std::nullopt;
      if (before && after)
        out[f] = interpolate(ts[*before], ts[f].timestamp, ts[*after]);
      else
        out[f].values = ts[before ? *before : *after].values;
    }
  }
  return summarize(ts, std::move(out), clock.elapsed());
}

/// MTCSC-G: global minimum-fix repair.
inline RepairResult mtcsc_g(const TimeSeries& ts, const SpeedConstraint& c) {
  require_valid(ts);
  detail::Stopwatch clock;
  RepairResult r = repair_by_fix_list(ts, find_fix_list(ts, c), c);
  r.elapsed = clock.elapsed();
  return r;
}

}  // namespace mtcsc
