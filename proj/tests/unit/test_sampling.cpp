#include "curvkit/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;
using Eigen::VectorXd;

TEST(Sampling, DirectionsAreUnitAndSeeded) {
  for (int n : {2, 3, 5}) {
    const auto a = low_discrepancy_directions(n, 64, 5);
    const auto b = low_discrepancy_directions(n, 64, 5);
    const auto c = low_discrepancy_directions(n, 64, 6);
    ASSERT_EQ(a.size(), 64u);
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i].norm(), 1.0, 1e-14);
      EXPECT_EQ(a[i], b[i]);
    }
    EXPECT_NE(a[0], c[0]);
  }
}

TEST(Sampling, DirectionsCoverTheSphere) {
  const auto dirs = low_discrepancy_directions(3, 2000, 1);
  VectorXd mean = VectorXd::Zero(3);
  for (const auto& d : dirs) mean += d;
  EXPECT_LT((mean / 2000.0).norm(), 0.05);
}

TEST(Sampling, PointsInUnitCube) {
  for (const auto& p : low_discrepancy_points(4, 100, 2)) {
    EXPECT_GE(p.minCoeff(), 0.0);
    EXPECT_LT(p.maxCoeff(), 1.0);
  }
}

TEST(Sampling, LevelSetPointsOfParaboloid) {
  const QuadraticCupField u;
  RaySampling s;
  s.center = VectorXd::Zero(3);
  s.rays = 30;
  const auto pts = sample_level_set(u, 0.5, s);
  ASSERT_EQ(pts.size(), 30u);
  for (const auto& x : pts) EXPECT_NEAR(x.norm(), 1.0, 1e-14);
}

TEST(Sampling, RaysLeavingTheDomainAreSkipped) {
  const SphereCapField cap(1.0);
  RaySampling s;
  s.center = VectorXd::Zero(2);
  s.rays = 10;
  EXPECT_TRUE(sample_level_set(cap, -0.5, s).empty());
  const auto pts = sample_level_set(cap, 0.6, s);
  ASSERT_EQ(pts.size(), 10u);
  for (const auto& x : pts) EXPECT_NEAR(x.norm(), 0.8, 1e-12);
}
