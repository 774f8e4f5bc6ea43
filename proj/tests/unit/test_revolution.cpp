#include "curvkit/conformal.hpp"
#include "curvkit/error.hpp"
#include "curvkit/revolution.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;
using Eigen::VectorXd;

TEST(Revolution, ProfileValues) {
  const auto u = RevolutionProfile::sphere_u(0.5);
  const ProfileJet ja = profile_jet(u, 0.5);
  EXPECT_NEAR(ja.value, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(ja.first, 0.0);
  EXPECT_NEAR(ja.second, 1.0, 1e-14);
  EXPECT_NEAR(profile_jet(u, 0.75).value, 0.042893218813452, 1e-12);
  EXPECT_TRUE(profile_jet(u, 1.0).singular);
  EXPECT_DOUBLE_EQ(profile_jet(RevolutionProfile::sphere_v(0.5), 1.0).value, 0.5);
  EXPECT_NEAR(profile_jet(RevolutionProfile::euclid_f(), 0.5).value, (std::sqrt(0.5) + 1.0) * std::sqrt(0.75), 1e-15);
  EXPECT_THROW(profile_jet(u, 0.4), Error);
  EXPECT_THROW(RevolutionProfile::sphere_u(1.0), Error);
}

TEST(Revolution, ProfileDerivativesMatchDifferences) {
  for (const auto& prof : {RevolutionProfile::sphere_u(0.3), RevolutionProfile::sphere_v(0.3),
                           RevolutionProfile::euclid_f()}) {
    for (double s : {0.45, 0.6, 0.8}) {
      const ProfileJet j = profile_jet(prof, s);
      auto value = [&](double t) { return profile_jet(prof, t).value; };
      auto first = [&](double t) { return profile_jet(prof, t).first; };
      EXPECT_NEAR(j.first, oracle::derivative(value, s, 1e-3), 1e-8) << to_string(prof.kind) << s;
      EXPECT_NEAR(j.second, oracle::derivative(first, s, 1e-3), 1e-7) << to_string(prof.kind) << s;
    }
  }
}

TEST(Revolution, GlueValueIsContinuous) {
  for (double a : {0.1, 0.5, 0.9})
    EXPECT_NEAR(profile_jet(RevolutionProfile::sphere_u(a), 1.0).value,
                profile_jet(RevolutionProfile::sphere_v(a), 1.0).value, 1e-15);
}

TEST(Revolution, CapCurvature) {
  EXPECT_DOUBLE_EQ(cap_curvature(0.5), -0.125);
  EXPECT_DOUBLE_EQ(cap_scalar_curvature(0.5), 2.03125);
  EXPECT_NEAR(cap_curvature(1.0 - 1e-12), 0.0, 1e-12);
  EXPECT_THROW(cap_curvature(0.0), Error);
}

TEST(Revolution, CapMatchesPipeline) {
  const auto v = revolution_field(RevolutionProfile::sphere_v(0.5));
  VectorXd x(2);
  x << 0.3, -0.5;
  const auto p = conformal_point(*v, spherical_ambient(), x);
  EXPECT_NEAR(p.principal[0], -0.125, 1e-13);
  EXPECT_NEAR(p.principal[1], -0.125, 1e-13);
  EXPECT_NEAR(*p.scalar_curvature, 2.03125, 1e-13);
}

TEST(Revolution, PrincipalCurvaturesAtInnerRadius) {
  const auto p = principal_curvatures_u(0.5, 0.5);
  EXPECT_NEAR(p.lambda1, 0.625, 1e-14);
  EXPECT_NEAR(p.lambda2, 0.0, 1e-15);
  EXPECT_NEAR(p.scalar, 2.0, 1e-14);
  const auto q = principal_curvatures_u(0.5, 0.75);
  EXPECT_GT(q.lambda1, 0.0);
  EXPECT_GE(q.lambda2, 0.0);
  EXPECT_GT(q.scalar, 2.0);
  EXPECT_THROW(principal_curvatures_u(0.5, 1.0), Error);
}

TEST(Revolution, ClosedFormMatchesPipeline) {
  for (double a : {0.25, 0.5, 0.8}) {
    const auto u = revolution_field(RevolutionProfile::sphere_u(a));
    for (int k = 1; k < 20; ++k) {
      const double r = a + (1.0 - a) * k / 20.5;
      VectorXd x(2);
      x << r * std::cos(0.3 * k), r * std::sin(0.3 * k);
      const auto p = conformal_point(*u, spherical_ambient(), x);
      const auto c = principal_curvatures_u(a, r);
      const double lo = std::min(c.lambda1, c.lambda2), hi = std::max(c.lambda1, c.lambda2);
      EXPECT_NEAR(p.principal[0], lo, 1e-9 * std::max(1.0, hi)) << a << " " << r;
      EXPECT_NEAR(p.principal[1], hi, 1e-9 * std::max(1.0, hi)) << a << " " << r;
      EXPECT_NEAR(*p.scalar_curvature, c.scalar, 1e-8 * std::max(1.0, hi * hi));
    }
  }
}

TEST(Revolution, MonotonicityConditions) {
  for (double a : {0.5, 0.9, 0.05}) {
    const auto rep = monotonicity_checks(a, profile_grid(a, 10000));
    EXPECT_TRUE(rep.all()) << a;
  }
  const auto half = monotonicity_checks(0.5, profile_grid(0.5, 100));
  EXPECT_NEAR(half.second_order_margin_at_a, 1.0, 1e-14);
  EXPECT_THROW(monotonicity_checks(1.0, {}), Error);
  EXPECT_THROW(monotonicity_checks(0.5, {0.2}), Error);
}

TEST(Revolution, ScalarCurvatureAtLeastTwo) {
  for (double a : {0.1, 0.5, 0.9}) {
    for (const auto& row : spherical_glued_sweep(a, 2000)) {
      EXPECT_GE(row.scalar, 2.0 - 1e-10);
      if (row.piece == 0 && row.scalar - 2.0 <= 1e-10) EXPECT_NEAR(row.r, a, 1e-6);
    }
  }
}

TEST(Revolution, JunctionLimits) {
  for (double a : {0.5, 0.25}) {
    const auto rep = junction_c2_check(a, junction_radii());
    EXPECT_TRUE(rep.pass) << a;
    EXPECT_NEAR(std::abs(rep.lambda2_limit), (1.0 - a) / 4.0, 1e-3);
    EXPECT_NEAR(std::abs(rep.lambda1_limit), (1.0 - a) / 4.0, 1e-3);
    EXPECT_NEAR(rep.value_limit, std::sqrt((1.0 - a) / 2.0), 1e-3);
    EXPECT_EQ(rep.sign_map, -1);
  }
  EXPECT_THROW(junction_c2_check(0.5, {0.99}), Error);
  EXPECT_THROW(junction_c2_check(0.5, {0.999, 0.99}), Error);
}

TEST(Revolution, EuclideanProfile) {
  const auto f = RevolutionProfile::euclid_f();
  EXPECT_EQ(profile_jet(f, 0.0).value, 1.0);
  EXPECT_EQ(profile_jet(f, 1.0).value, 0.0);
  EXPECT_TRUE(profile_jet(f, 0.0).singular);
  EXPECT_GT(profile_jet(f, 1e-10).first, 1e4);
  EXPECT_GT(gauss_curvature_f(0.5), 0.0);
  double min_k = 1.0;
  for (const auto& row : euclid_cone_sweep(1000)) min_k = std::min(min_k, row.gauss);
  EXPECT_GE(min_k, -1e-10);
  EXPECT_THROW(gauss_curvature_f(0.0), Error);
}

TEST(Revolution, GaussCurvatureMatchesGraph) {
  const auto g = rotation_f_graph();
  for (double z : {0.1, 0.4, 0.7, 0.95}) {
    for (double frac : {0.0, 0.5}) {
      VectorXd x(2);
      x << frac * profile_jet(RevolutionProfile::euclid_f(), z).value, z;
      const auto p = extrinsic_point(*g, FlatMetric{}, x);
      EXPECT_NEAR(p.principal[0] * p.principal[1], gauss_curvature_f(z), 1e-9) << z;
    }
  }
}
