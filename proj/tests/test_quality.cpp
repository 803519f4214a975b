#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mtcsc/adaptive.hpp"
#include "mtcsc/global.hpp"
#include "mtcsc/quality.hpp"
#include "mtcsc/streaming.hpp"
#include "mtcsc/synthetic.hpp"

namespace mtcsc {
namespace {

using testing::make_series;

TEST(InjectErrors, ZeroRateIsIdentity) {
  const auto truth = synthetic::bounded_walk(100, 2, 1.0, 1);
  auto inj = inject_errors(truth, ErrorSpec{0.0, ErrorPattern::Together, 9, {}});
  EXPECT_EQ(inj.dirty, truth);
  EXPECT_TRUE(inj.errors.empty());
}

TEST(InjectErrors, TogetherCorruptsWholePoints) {
  const auto truth = synthetic::bounded_walk(1000, 3, 1.0, 2);
  auto inj = inject_errors(truth, ErrorSpec{0.05, ErrorPattern::Together, 9, {}});
  EXPECT_EQ(inj.errors.size(), 150u);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    EXPECT_EQ(inj.dirty[i].timestamp, truth[i].timestamp);
    std::size_t dims = 0;
    for (std::size_t l = 0; l < 3; ++l) dims += inj.dirty[i].values[l] != truth[i].values[l];
    if (dims > 0) {
      ++changed;
      EXPECT_EQ(dims, 3u);
    }
  }
  EXPECT_EQ(changed, 50u);
}

TEST(InjectErrors, SeparateSplitsBudgetOverDimensions) {
  const auto truth = synthetic::bounded_walk(1000, 2, 1.0, 3);
  auto inj = inject_errors(truth, ErrorSpec{0.05, ErrorPattern::Separate, 9, {}});
  std::size_t only0 = 0, only1 = 0, both = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool a = inj.dirty[i].values[0] != truth[i].values[0];
    const bool b = inj.dirty[i].values[1] != truth[i].values[1];
    only0 += a && !b;
    only1 += b && !a;
    both += a && b;
  }
  EXPECT_EQ(only0, 25u);
  EXPECT_EQ(only1, 25u);
  EXPECT_EQ(both, 0u);

  // Remainder goes to earlier dimensions: 7 errors over 3 dims -> 3, 2, 2.
  const auto t3 = synthetic::bounded_walk(70, 3, 1.0, 4);
  auto i3 = inject_errors(t3, ErrorSpec{0.1, ErrorPattern::Separate, 5, {}});
  std::vector<std::size_t> per_dim(3);
  for (const auto& e : i3.errors) ++per_dim[e.dimension];
  EXPECT_EQ(per_dim, (std::vector<std::size_t>{3, 2, 2}));
}

TEST(InjectErrors, DrawsStayInRange) {
  const auto truth = synthetic::bounded_walk(500, 2, 1.0, 6);
  const auto range = value_range(truth);
  auto inj = inject_errors(truth, ErrorSpec{0.3, ErrorPattern::Together, 1, {}});
  for (const auto& e : inj.errors) {
    const double v = inj.dirty[e.index].values[e.dimension];
    EXPECT_GE(v, range[e.dimension].first);
    EXPECT_LE(v, range[e.dimension].second);
  }
}

TEST(InjectErrors, Deterministic) {
  const auto truth = synthetic::bounded_walk(800, 2, 1.0, 7);
  const ErrorSpec spec{0.1, ErrorPattern::Separate, 1234, {}};
  auto a = inject_errors(truth, spec);
  auto b = inject_errors(truth, spec);
  EXPECT_EQ(a.dirty, b.dirty);
  EXPECT_EQ(a.errors, b.errors);
  auto c = inject_errors(truth, ErrorSpec{0.1, ErrorPattern::Separate, 1235, {}});
  EXPECT_NE(a.dirty, c.dirty);
}

TEST(InjectErrors, Rejects) {
  const auto truth = synthetic::bounded_walk(10, 1, 1.0, 7);
  EXPECT_THROW(inject_errors(truth, ErrorSpec{1.5, ErrorPattern::Together, 0, {}}), InputError);
  EXPECT_THROW(inject_errors(TimeSeries{}, ErrorSpec{0.1, ErrorPattern::Together, 0, {}}), InputError);
  EXPECT_THROW(parse_pattern("sometimes"), InputError);
}

TEST(Metrics, Rmse) {
  auto a = make_series({0, 1, 2}, {{0, 0}, {1, 1}, {2, 2}});
  EXPECT_EQ(rmse(a, a), 0.0);
  auto b = a;
  b[1].values = {4, 5};
  EXPECT_DOUBLE_EQ(rmse(b, a), std::sqrt(25.0 / 3.0));
  EXPECT_DOUBLE_EQ(rmse(a, b), rmse(b, a));
  EXPECT_THROW(rmse(a, make_series({0}, {{0, 0}})), InputError);
}

TEST(Metrics, RepairDistanceAndNumber) {
  TimeSeries ten;
  for (int i = 0; i < 10; ++i) ten.push_back({double(i), {0.0}});
  auto moved = ten;
  moved[4].values = {1.0};
  EXPECT_DOUBLE_EQ(repair_distance(moved, ten), 0.1);
  EXPECT_EQ(repair_distance(ten, ten), 0.0);
  EXPECT_EQ(repair_number(moved, ten).count, 1u);
  EXPECT_EQ(repair_number(ten, ten).count, 0u);

  auto all = ten;
  for (auto& p : all.points) p.values[0] += 1;
  EXPECT_EQ(repair_number(all, ten).fraction, 1.0);
}

TEST(Metrics, GlobalRepairOfSpeedExample) {
  const auto ts = testing::speed_example();
  auto r = mtcsc_g(ts, SpeedConstraint(1, 7));
  EXPECT_NEAR(repair_distance(r.repaired, ts), 0.1357, 1e-4);
  EXPECT_EQ(repair_number(r.repaired, ts).count, 2u);
  auto rep = evaluate(ts, ts, r);
  EXPECT_EQ(rep.repair_count, 2u);
  EXPECT_NEAR(rep.repair_number, 2.0 / 7.0, 1e-12);
}

TEST(Ewma, Examples) {
  auto x = make_series({0, 1}, {{0, 0}, {1, 1}});
  auto y = ewma(x, 0.5);
  EXPECT_EQ(y[0].values, (std::vector<double>{0, 0}));
  EXPECT_EQ(y[1].values, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(ewma(x, 1.0), x);
  auto flat = make_series({0, 1, 2}, {{3}, {3}, {3}});
  EXPECT_EQ(ewma(flat, 0.2), flat);
  EXPECT_THROW(ewma(x, 0.0), InputError);
  EXPECT_THROW(ewma(x, 1.1), InputError);
}

TEST(Evaluate, EveryCleanerOutputIsValid) {
  const auto truth = synthetic::bounded_walk(400, 2, 1.0, 8);
  const auto inj = inject_errors(truth, ErrorSpec{0.1, ErrorPattern::Separate, 8, {}});
  const SpeedConstraint c(1.0, 5.0);
  for (const auto& r : {mtcsc_g(inj.dirty, c), mtcsc_l(inj.dirty, c), mtcsc_c(inj.dirty, c),
                        mtcsc_a(inj.dirty, c, AdaptiveParams{})}) {
    auto rep = evaluate(truth, inj.dirty, r);
    EXPECT_TRUE(std::isfinite(rep.repair_distance));
    EXPECT_TRUE(validate(r.repaired).empty());
    EXPECT_LT(rep.rmse, rmse(inj.dirty, truth));
  }
}

}  // namespace
}  // namespace mtcsc
