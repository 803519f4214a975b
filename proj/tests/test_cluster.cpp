#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mtcsc/cluster.hpp"
#include "mtcsc/quality.hpp"
#include "mtcsc/synthetic.hpp"

namespace mtcsc {
namespace {

using testing::cluster_example;
using testing::make_series;
using testing::pairwise_violations;
using Role = ClusterFlag::Role;

void expect_point(const DataPoint& p, std::vector<double> v, double tol) {
  ASSERT_EQ(p.values.size(), v.size());
  for (std::size_t l = 0; l < v.size(); ++l) EXPECT_NEAR(p.values[l], v[l], tol) << "dim " << l;
}

TEST(BuildCluster, WorkedExampleClustersAndFlags) {
  const auto ts = cluster_example();
  const std::span<const DataPoint> window(ts.points.data() + 2, 6);  // t = 2..7
  auto b = build_cluster_detailed(ts[0], window, SpeedConstraint(1, 6));

  ASSERT_EQ(b.clusters.size(), 3u);
  EXPECT_EQ(b.clusters[0], (WindowCluster{0, {0}}));
  EXPECT_EQ(b.clusters[1], (WindowCluster{1, {1, 2, 4, 5}}));
  EXPECT_EQ(b.clusters[2], (WindowCluster{3, {3}}));

  const std::vector<ClusterFlag> flags{{Role::Seed, 0},   {Role::Seed, 1},   {Role::Member, 1},
                                       {Role::Seed, 3},   {Role::Member, 1}, {Role::Member, 1}};
  EXPECT_EQ(b.flags, flags);
  EXPECT_EQ(largest_cluster(b.clusters)->seed_index, 1u);
}

TEST(BuildCluster, EmptyWindowAndNoCompatiblePoint) {
  const DataPoint prev{0, {0}};
  EXPECT_TRUE(build_cluster(prev, {}, SpeedConstraint(1, 3)).empty());
  const std::vector<DataPoint> far{{1, {50}}, {2, {51}}};
  auto b = build_cluster_detailed(prev, far, SpeedConstraint(1, 3));
  EXPECT_TRUE(b.clusters.empty());
  EXPECT_EQ(b.flags[0].role, Role::Omitted);
  EXPECT_EQ(b.flags[1].role, Role::Omitted);
  EXPECT_EQ(largest_cluster(b.clusters), nullptr);
}

TEST(LargestCluster, TieGoesToEarliestSeed) {
  std::vector<WindowCluster> cs{{0, {0, 2}}, {1, {1, 3}}, {4, {4}}};
  EXPECT_EQ(largest_cluster(cs)->seed_index, 0u);
}

TEST(MtcscC, WorkedExample) {
  auto r = mtcsc_c(cluster_example(), SpeedConstraint(1, 6));
  EXPECT_EQ(r.fixed_indices, (std::vector<std::size_t>{1, 2, 5}));
  expect_point(r.repaired[1], {1.83, 1}, 1e-2);
  expect_point(r.repaired[2], {2.66, 1}, 1e-2);
  expect_point(r.repaired[5], {5.5, 1}, 1e-2);
  // Exact values from the independent trace.
  expect_point(r.repaired[1], {1.83333333333, 1}, 1e-9);
  expect_point(r.repaired[2], {2.66666666667, 1}, 1e-9);
}

TEST(MtcscC, SpeedExampleWindowSevenRegression) {
  // Frozen from tests/oracles/trace_examples.py.
  auto r = mtcsc_c(testing::speed_example(), SpeedConstraint(1, 7));
  EXPECT_EQ(r.repair_count, 2u);
  EXPECT_EQ(r.fixed_indices, (std::vector<std::size_t>{1, 3}));
  expect_point(r.repaired[1], {1.875, 1}, 1e-9);
  expect_point(r.repaired[3], {3.55, 1}, 1e-9);
}

TEST(MtcscC, EmptyClusterFallback) {
  // Key violates and nothing in its window is reachable: copy the previous point.
  auto ts = make_series({0, 1, 2}, {{0}, {10}, {20}});
  auto r = mtcsc_c(ts, SpeedConstraint(1, 1));
  expect_point(r.repaired[1], {0}, 0);
  // A satisfied key with an empty window is kept.
  auto last = make_series({0, 1}, {{0}, {0.5}});
  EXPECT_EQ(mtcsc_c(last, SpeedConstraint(1, 1)).repaired, last);
}

TEST(ClusterCleaner, LatencyIsOneWindow) {
  ClusterCleaner cl{FixedSpeed(SpeedConstraint(1, 2))};
  EXPECT_EQ(cl.push({0, {0}}).size(), 1u);
  EXPECT_TRUE(cl.push({1, {0.5}}).empty());
  EXPECT_TRUE(cl.push({2, {0.6}}).empty());
  EXPECT_TRUE(cl.push({3, {0.7}}).empty());
  auto out = cl.push({3.5, {0.8}});  // 3.5 > 1 + 2
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].timestamp, 1);
  EXPECT_EQ(cl.flush().size(), 3u);
  EXPECT_EQ(cl.buffered(), 0u);
  EXPECT_THROW(cl.push({3.5, {0}}), OrderingError);
}

class ClusterRandom : public ::testing::Test {
protected:
  std::mt19937_64 rng{7331};
};

TEST_F(ClusterRandom, OutputSatisfiesConstraintPairwise) {
  for (int trial = 0; trial < 400; ++trial) {
    auto rc = testing::random_case(rng, 40, 3);
    auto r = mtcsc_c(rc.series, rc.constraint);
    ASSERT_EQ(r.repaired.size(), rc.series.size());
    EXPECT_TRUE(pairwise_violations(r.repaired, rc.constraint.s_max, rc.constraint.window).empty())
        << "trial " << trial;
  }
}

TEST_F(ClusterRandom, CleanInputIsFixpoint) {
  for (int trial = 0; trial < 200; ++trial) {
    auto rc = testing::random_case(rng, 30, 3);
    if (!pairwise_violations(rc.series, rc.constraint.s_max, rc.constraint.window).empty()) continue;
    EXPECT_EQ(mtcsc_c(rc.series, rc.constraint).repair_count, 0u) << "trial " << trial;
  }
}

TEST_F(ClusterRandom, ChunkedStreamingMatchesBatch) {
  for (int trial = 0; trial < 100; ++trial) {
    auto rc = testing::random_case(rng, 40, 2);
    ClusterCleaner cl{FixedSpeed(rc.constraint)};
    TimeSeries streamed;
    for (const auto& p : rc.series)
      for (auto& q : cl.push(p)) streamed.push_back(q);
    for (auto& q : cl.flush()) streamed.push_back(q);
    EXPECT_EQ(streamed, mtcsc_c(rc.series, rc.constraint).repaired);
  }
}

TEST(MtcscC, ImprovesRmseOnNoisyWalk) {
  const auto truth = synthetic::bounded_walk(2000, 2, 1.0, 3);
  const auto inj = inject_errors(truth, ErrorSpec{0.1, ErrorPattern::Together, 4, {}});
  auto r = mtcsc_c(inj.dirty, SpeedConstraint(1.0, 5.0));
  EXPECT_LT(rmse(r.repaired, truth), rmse(inj.dirty, truth));
}

}  // namespace
}  // namespace mtcsc
