#include "curvkit/field_catalog.hpp"
#include "curvkit/suites.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;

namespace {

SuiteConfig small(int fields = 6, int points = 5) {
  SuiteConfig c;
  c.fields = fields;
  c.points = points;
  c.seed = 11;
  return c;
}

}  // namespace

TEST(Suites, DrawsAreDeterministic) {
  const auto a = draw_fields(10, 2, 4, 5);
  const auto b = draw_fields(10, 2, 4, 5);
  ASSERT_EQ(a.size(), 10u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].level, b[i].level);
    EXPECT_GE(a[i].n, 2);
    EXPECT_LE(a[i].n, 4);
  }
  EXPECT_NE(draw_fields(3, 2, 2, 6)[0].seed, a[0].seed);
}

TEST(Suites, MinorAnalyticIsExact) {
  const auto r = run_minor_suite(small(), *parse_base("flat"));
  EXPECT_GT(r.evaluated, 10);
  EXPECT_LT(r.max_residual, 1e-12);
  ASSERT_TRUE(r.worst.has_value());
  EXPECT_EQ(r.worst->residual, r.max_residual);
  const auto round = run_minor_suite(small(), *parse_base("round"));
  EXPECT_LT(round.max_residual, 1e-12);
}

TEST(Suites, MinorFiniteDifferenceConverges) {
  const SuiteConfig c = small(4, 4);
  const auto r = run_minor_suite(c, *parse_base("flat"), 1e-3);
  EXPECT_LT(r.max_residual, 1e-4);
  ASSERT_TRUE(r.worst.has_value());
  const auto d = draw_fields(c.fields, c.n_min, c.n_max, c.seed)[static_cast<std::size_t>(r.worst->field)];
  const FieldPtr f = std::make_shared<RandomAnalyticField>(d.seed, d.n);
  const auto conv = minor_fd_convergence(f, *parse_base("flat"), r.worst->level, r.worst->x, 1e-2, 2);
  ASSERT_EQ(conv.orders.size(), 2u);
  for (double o : conv.orders) EXPECT_NEAR(o, 2.0, 0.3);
}

TEST(Suites, GaussResidualSmall) {
  EXPECT_LT(run_gauss_suite(small(3, 4), *parse_base("flat")).max_residual, 1e-5);
  EXPECT_LT(run_gauss_suite(small(2, 3), *parse_base("round-fd")).max_residual, 1e-5);
}

TEST(Suites, GreatSphereIsMinimal) {
  for (int n : {2, 3}) {
    const auto g = run_great_sphere_suite(50, n, 3);
    EXPECT_EQ(g.points, 100);
    EXPECT_LT(g.max_abs_mean, 1e-12);
    EXPECT_LT(g.max_route_difference, 1e-12);
  }
  EXPECT_LT(run_spherical_route_suite(small()).max_residual, 1e-10);
}

TEST(Suites, InequalitiesHold) {
  const auto flat = parse_ambient("flat", parse_base("flat"));
  const auto sph = parse_ambient("spherical", parse_base("flat"));
  for (auto which : {InequalityKind::Prod, InequalityKind::Phi, InequalityKind::Euclid, InequalityKind::Sphere}) {
    const auto r = run_inequality_suite(which, small(), which == InequalityKind::Phi ? sph : flat);
    EXPECT_GT(r.evaluated, 10) << to_string(which);
    EXPECT_EQ(r.violations, 0) << to_string(which);
    EXPECT_GE(r.min_gap, -1e-8);
    EXPECT_LT(r.max_decomposition_mismatch, 1e-10);
  }
  const auto round = parse_ambient("flat", parse_base("round"));
  EXPECT_EQ(run_inequality_suite(InequalityKind::Prod, small(3, 4), round).violations, 0);
}
