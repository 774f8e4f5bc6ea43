#include "curvkit/domain.hpp"
#include "curvkit/error.hpp"

#include <gtest/gtest.h>

using namespace curvkit;
using Eigen::VectorXd;

TEST(Domain, WholeContainsEverything) {
  const auto d = Domain::whole();
  EXPECT_TRUE(d.contains(VectorXd::Constant(3, 1e6)));
  EXPECT_FALSE(d.dimension().has_value());
}

TEST(Domain, BoxMargins) {
  const auto d = Domain::box(VectorXd::Zero(2), VectorXd::Ones(2));
  EXPECT_EQ(d.dimension(), 2);
  EXPECT_TRUE(d.contains(VectorXd::Constant(2, 0.5), 0.4));
  EXPECT_FALSE(d.contains(VectorXd::Constant(2, 0.5), 0.6));
  EXPECT_THROW(Domain::box(VectorXd::Ones(2), VectorXd::Zero(2)), Error);
}

TEST(Domain, BallAndAnnulus) {
  const auto ball = Domain::ball(1.0);
  EXPECT_TRUE(ball.contains(VectorXd::Constant(3, 0.5)));
  EXPECT_FALSE(ball.contains(VectorXd::Constant(3, 0.6)));
  const auto ann = Domain::annulus(0.5, 1.0);
  VectorXd x(2);
  x << 0.7, 0.0;
  EXPECT_TRUE(ann.contains(x));
  EXPECT_FALSE(ann.contains(x, 0.25));
  x << 0.3, 0.0;
  EXPECT_FALSE(ann.contains(x));
  EXPECT_THROW(Domain::annulus(1.0, 0.5), Error);
  EXPECT_THROW(Domain::ball(0.0), Error);
}
