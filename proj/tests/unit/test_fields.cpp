#include "curvkit/error.hpp"
#include "curvkit/fields.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Gradient and Hessian of the field's values by fourth-order differences.
void expect_jet_matches_values(const ScalarField& f, const VectorXd& x, double tol) {
  const Jet j = f.eval_jet(x);
  const auto n = x.size();
  EXPECT_NEAR(j.value, f.eval_value(x), 1e-14 * std::max(1.0, std::abs(j.value)));
  for (Eigen::Index i = 0; i < n; ++i) {
    auto along = [&](double s) {
      VectorXd y = x;
      y[i] += s;
      return f.eval_value(y);
    };
    EXPECT_NEAR(j.gradient[i], oracle::derivative(along, 0.0), tol) << f.describe() << " d" << i;
    for (Eigen::Index k = 0; k < n; ++k) {
      auto grad_k = [&](double s) {
        VectorXd y = x;
        y[i] += s;
        return f.eval_jet(y).gradient[k];
      };
      EXPECT_NEAR(j.hessian(k, i), oracle::derivative(grad_k, 0.0), tol) << f.describe() << " d" << i << k;
    }
  }
}

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

}  // namespace

TEST(Fields, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(ConstantField(2.5).eval_value(vec({1, 2})), 2.5);
  EXPECT_DOUBLE_EQ(PlaneField(vec({1, -2}), 0.5).eval_value(vec({3, 1})), 1.5);
  EXPECT_DOUBLE_EQ(QuadraticCupField().eval_value(vec({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(QuadraticCupField(vec({1, 4, 9})).eval_value(vec({1, 1, 1})), 7.0);
  EXPECT_DOUBLE_EQ(SphereCapField(1.0, 0.5).eval_value(vec({0.6, 0.0})), 1.3);
  PolynomialField p({{2.0, {2, 1}}, {-1.0, {0, 3}}});
  EXPECT_DOUBLE_EQ(p.eval_value(vec({3, 2})), 2.0 * 9 * 2 - 8);
}

TEST(Fields, AnalyticJetsMatchDifferences) {
  expect_jet_matches_values(PlaneField(vec({0.3, -0.7})), vec({0.2, 0.4}), 1e-9);
  expect_jet_matches_values(QuadraticCupField(vec({1, 4, 9})), vec({0.2, -0.4, 0.1}), 1e-9);
  expect_jet_matches_values(SphereCapField(0.9, 0.1), vec({0.2, 0.3}), 1e-7);
  expect_jet_matches_values(PolynomialField({{2.0, {2, 1}}, {-1.0, {0, 3}}, {0.5, {1, 1}}}), vec({0.3, -0.2}),
                            1e-8);
  expect_jet_matches_values(BumpField(1.0, 0.3, 0.2), vec({0.5, 0.3}), 1e-8);
  for (std::uint64_t seed : {1u, 2u, 3u}) expect_jet_matches_values(RandomAnalyticField(seed, 3), vec({0.4, -0.1, 0.2}), 1e-8);
}

TEST(Fields, RadialFieldFromProfile) {
  const RadialField f([](double r) { return ProfileJet{r * r * r, 3 * r * r, 6 * r, false}; }, Domain::whole(),
                      "cubic");
  expect_jet_matches_values(f, vec({0.3, 0.4}), 1e-8);
  EXPECT_TRUE(f.eval_jet(vec({0.0, 0.0})).hessian.isZero());
}

TEST(Fields, RadialSingularProfileThrows) {
  const RadialField f([](double) { return ProfileJet{0, 0, 0, true}; }, Domain::whole(), "s");
  EXPECT_THROW(f.eval_jet(vec({0.5, 0.0})), Error);
}

TEST(Fields, SphereCapOutsideBallThrows) {
  const SphereCapField cap(1.0);
  try {
    cap.eval_jet(vec({1.2, 0.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfDomain);
  }
}

TEST(Fields, DimensionMismatchThrows) {
  EXPECT_THROW(QuadraticCupField(vec({1, 2})).eval_jet(vec({1, 2, 3})), Error);
  EXPECT_THROW(RandomAnalyticField(1, 2).eval_value(vec({1})), Error);
}

TEST(Fields, RandomFieldIsSeeded) {
  const RandomAnalyticField a(42, 3), b(42, 3), c(43, 3);
  const VectorXd x = vec({0.3, 0.1, -0.2});
  EXPECT_EQ(a.eval_value(x), b.eval_value(x));
  EXPECT_NE(a.eval_value(x), c.eval_value(x));
}

TEST(Fields, ScaledFieldScalesJet) {
  auto inner = std::make_shared<RandomAnalyticField>(5, 2);
  const ScaledField s(-2.0, inner);
  const VectorXd x = vec({0.2, 0.7});
  const Jet ji = inner->eval_jet(x), js = s.eval_jet(x);
  EXPECT_DOUBLE_EQ(js.value, -2.0 * ji.value);
  EXPECT_TRUE(js.gradient.isApprox(-2.0 * ji.gradient));
  EXPECT_TRUE(js.hessian.isApprox(-2.0 * ji.hessian));
}

TEST(Fields, FiniteDifferenceFieldConvergesAtSecondOrder) {
  auto inner = std::make_shared<RandomAnalyticField>(9, 2);
  const VectorXd x = vec({0.3, -0.4});
  const Jet exact = inner->eval_jet(x);
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double h = 0.02 / std::pow(2.0, k);
    const FiniteDifferenceField fd(inner, h);
    const double err = (fd.eval_jet(x).hessian - exact.hessian).cwiseAbs().maxCoeff();
    if (k > 0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.2);
    prev = err;
  }
  const FiniteDifferenceField automatic(inner);
  EXPECT_LT((automatic.eval_jet(x).hessian - exact.hessian).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((automatic.eval_jet(x).gradient - exact.gradient).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(automatic.mode(), JetMode::FiniteDifference);
}

TEST(Fields, FiniteDifferenceBandExcludesBoundary) {
  auto cap = std::make_shared<SphereCapField>(1.0);
  const FiniteDifferenceField fd(cap, 0.01);
  EXPECT_TRUE(fd.in_domain(vec({0.9, 0.0})));
  EXPECT_FALSE(fd.in_domain(vec({0.985, 0.0})));
  EXPECT_THROW(fd.eval_jet(vec({0.985, 0.0})), Error);
  EXPECT_THROW(FiniteDifferenceField(cap, -1.0), Error);
}

TEST(Fields, BumpVanishesOnBoundarySpheres) {
  const BumpField b(2.0, 0.4, 0.3);
  for (double r : {0.4 + 1e-9, 1.0 - 1e-9}) {
    const Jet j = b.eval_jet(vec({r, 0.0}));
    EXPECT_NEAR(j.value, 0.0, 1e-15);
    EXPECT_NEAR(j.gradient.norm(), 0.0, 1e-8);
  }
  EXPECT_THROW(BumpField(1.0, 1.2), Error);
}
