#include "curvkit/barrier.hpp"
#include "curvkit/conformal.hpp"
#include "curvkit/error.hpp"
#include "curvkit/revolution.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

BarrierOptions coarse() {
  BarrierOptions o;
  o.sampling.radial = 256;
  o.sampling.angular = 64;
  return o;
}

}  // namespace

TEST(Barrier, BarrierValue) {
  EXPECT_DOUBLE_EQ(barrier_value(2.0, vec({1, 0})), 0.0);
  EXPECT_DOUBLE_EQ(barrier_value(2.0, vec({0.3, 0.4})), 1.0);
  EXPECT_DOUBLE_EQ(barrier_value(0.0, vec({0.1, 0.9})), 0.0);
}

// Radial bump c (r-a)^2 (1-r)^2: u/(1-r) peaks at r = (2+a)/3 with value 4c(1-a)^3/27.
TEST(Barrier, RadialBumpTouchesInterior) {
  const double c = 3.0, a = 0.4;
  const BumpField u(c, a);
  const BarrierRun run = slide(u, 2, a, 0.45, 5.0);
  ASSERT_EQ(run.outcome, SlideOutcome::Touch);
  const double scan = oracle::radial_barrier_slope(
      [&](double r) { return c * (r - a) * (r - a) * (1 - r) * (1 - r); }, 0.45, 1.0, 200000);
  EXPECT_NEAR(run.lambda_star, scan, 1e-8);
  EXPECT_NEAR(run.lambda_star, 4.0 * c * std::pow(1 - a, 3) / 27.0, 1e-12);
  EXPECT_NEAR(run.x0.norm(), (2.0 + a) / 3.0, 1e-7);
  EXPECT_NEAR(barrier_value(run.lambda_star, run.x0), run.u0, 1e-8);
  EXPECT_LE(run.max_excess, 1e-8);
  EXPECT_GE(run.grad_norm, std::abs(run.radial_derivative) - 1e-12);
  EXPECT_GE(std::abs(run.radial_derivative), run.lambda_star - 1e-6);
  EXPECT_LE(run.lambda_star, run.lambda_max);
}

TEST(Barrier, TiltedBumpInThreeDimensions) {
  const BumpField u(2.0, 0.3, 0.4);
  const BarrierRun run = slide(u, 3, 0.3, 0.35, 5.0, coarse());
  ASSERT_TRUE(run.successful());
  EXPECT_GE(run.grad_norm, run.lambda_star - 1e-6);
  EXPECT_NEAR(barrier_value(run.lambda_star, run.x0), run.u0, 1e-8);
  const auto b = comparison_bounds(run);
  EXPECT_TRUE(b.ordering_checked);
  EXPECT_TRUE(b.ordering_holds);
  EXPECT_NEAR(b.upper, b.upper_cap, 1e-6);
}

TEST(Barrier, ZeroFieldIsDegenerate) {
  const ConstantField zero(0.0);
  const BarrierRun run = slide(zero, 2, 0.2, 0.3, 1.0, coarse());
  EXPECT_EQ(run.outcome, SlideOutcome::Degenerate);
  EXPECT_DOUBLE_EQ(run.lambda_star, 0.0);
}

TEST(Barrier, NegativeFieldHasNoTouch) {
  const ConstantField neg(-0.5);
  try {
    slide(neg, 2, 0.2, 0.3, 1.0, coarse());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoTouch);
  }
}

TEST(Barrier, NegateBranchViaScaledField) {
  auto bump = std::make_shared<BumpField>(1.0, 0.3);
  const ScaledField neg(-1.0, bump);
  EXPECT_THROW(slide(neg, 2, 0.3, 0.35, 5.0, coarse()), Error);
  const ScaledField back(-1.0, std::make_shared<ScaledField>(-1.0, bump));
  EXPECT_TRUE(slide(back, 2, 0.3, 0.35, 5.0, coarse()).successful());
}

TEST(Barrier, PreconditionsChecked) {
  const BumpField u(1.0, 0.3);
  EXPECT_THROW(slide(u, 2, 0.3, 0.2, 5.0), Error);
  EXPECT_THROW(slide(u, 2, 0.3, 0.35, 1e-4, coarse()), Error);
  const SphereCapField small(0.2);
  try {
    slide(small, 2, 0.3, 0.4, 5.0, coarse());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyDomain);
  }
}

TEST(Barrier, ScalingIsMonotone) {
  auto u = std::make_shared<BumpField>(1.0, 0.3, 0.2);
  const double full = slide(*u, 2, 0.3, 0.35, 5.0, coarse()).lambda_star;
  double prev = full;
  for (double c : {0.9, 0.5, 0.1}) {
    const double scaled = slide(ScaledField(c, u), 2, 0.3, 0.35, 5.0, coarse()).lambda_star;
    EXPECT_LE(scaled, prev + 1e-12);
    EXPECT_NEAR(scaled, c * full, 1e-9);
    prev = scaled;
  }
}

// The glued example's u increases to u(1) > 0, so u/(1-r) grows without bound
// and the first touch is at the outermost sampled ring.
TEST(Barrier, SphericalExampleTouchesAtTheBoundary) {
  const auto u = revolution_field(RevolutionProfile::sphere_u(0.5));
  const BarrierRun run = slide(*u, 2, 0.5, 0.55, 1e4, coarse());
  EXPECT_EQ(run.outcome, SlideOutcome::BoundaryTouch);
  EXPECT_GT(run.lambda_star, 0.0);
  const auto b = comparison_bounds(run);
  EXPECT_FALSE(b.ordering_checked);
  EXPECT_THROW(slide(*u, 2, 0.5, 0.55, 10.0, coarse()), Error);
}

TEST(Barrier, RingMeanCurvatureValues) {
  EXPECT_DOUBLE_EQ(ring_mean_curvature(1.0, 0.0, 2), 0.0);
  EXPECT_DOUBLE_EQ(ring_mean_curvature(0.5, 0.0, 2), 0.75);
  EXPECT_DOUBLE_EQ(ring_mean_curvature(0.5, 0.5, 3), 2.0);
  EXPECT_THROW(ring_mean_curvature(0.0, 0.0, 2), Error);
  EXPECT_THROW(ring_mean_curvature(1.5, 0.0, 2), Error);
}

TEST(Barrier, RingMatchesConformalComputation) {
  for (int n : {2, 3, 4})
    for (double rho : {0.2, 0.5, 0.9})
      for (double eps : {0.0, 0.3, 1.1})
        EXPECT_NEAR(ring_mean_curvature(rho, eps, n), coordinate_sphere_mean_curvature(rho, eps, n), 1e-10);
}

TEST(Barrier, ComparisonBoundsValues) {
  const auto b = comparison_bounds(0.5, 0.0, std::nullopt, 2);
  EXPECT_DOUBLE_EQ(b.upper_cap, 0.5);
  EXPECT_DOUBLE_EQ(b.lower, 0.75);
  EXPECT_TRUE(b.ordering_checked);
  EXPECT_TRUE(b.ordering_holds);
  const auto edge = comparison_bounds(1.0 - 1e-5, 0.0, std::nullopt, 2);
  EXPECT_FALSE(edge.ordering_checked);
  EXPECT_NEAR(edge.upper_cap, 0.0, 1e-4);
  EXPECT_NEAR(edge.lower, 0.0, 1e-4);
  EXPECT_THROW(comparison_bounds(0.5, 0.1, 1e-9, 2), Error);
}
