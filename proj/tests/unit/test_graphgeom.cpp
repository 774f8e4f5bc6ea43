#include "curvkit/error.hpp"
#include "curvkit/graphgeom.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curvkit;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

}  // namespace

// Hand computation at (1, 0): W = sqrt 2, Hessian = I.
TEST(Graphgeom, ParaboloidPoint) {
  const QuadraticCupField u;
  const ExtrinsicPoint p = extrinsic_point(u, FlatMetric{}, vec({1, 0}));
  EXPECT_NEAR(p.w, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.shape(0, 0), 1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(p.shape(1, 1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(p.shape(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(p.mean, 3.0 / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(p.scalar_curvature, 0.5, 1e-15);
  EXPECT_NEAR(p.normal[2], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Graphgeom, SphereCapIsUmbilic) {
  for (int n : {2, 3}) {
    const SphereCapField cap(2.0, 0.3);
    const VectorXd x = VectorXd::LinSpaced(n, 0.2, 0.9);
    const ExtrinsicPoint p = extrinsic_point(cap, FlatMetric{}, x);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(p.principal[i], -0.5, 1e-13);
    EXPECT_NEAR(p.scalar_curvature, n * (n - 1.0) / 4.0, 1e-12);
  }
}

TEST(Graphgeom, TiltedPlaneIsFlat) {
  const PlaneField u(vec({0.7, 0.0, -0.2}));
  const ExtrinsicPoint p = extrinsic_point(u, FlatMetric{}, vec({0.1, 0.2, 0.3}));
  EXPECT_TRUE(p.shape.isZero(1e-15));
  EXPECT_DOUBLE_EQ(p.scalar_curvature, 0.0);
}

TEST(Graphgeom, ShapeMatchesDifferencedNormal) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const RandomAnalyticField u(seed, n);
    const VectorXd x = VectorXd::LinSpaced(n, -0.4, 0.3);
    const ExtrinsicPoint p = extrinsic_point(u, FlatMetric{}, x);
    EXPECT_LT((p.shape - oracle::shape_from_normal_field(u, x)).cwiseAbs().maxCoeff(), 1e-9) << seed;
  }
}

TEST(Graphgeom, InvariantsAreRotationInvariant) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3;
    auto inner = std::make_shared<RandomAnalyticField>(100 + trial, n);
    const MatrixXd r = oracle::random_rotation(n, rng);
    const oracle::RotatedField rotated(inner, r);
    const VectorXd x = vec({0.3, -0.2, 0.5});
    const ExtrinsicPoint a = extrinsic_point(*inner, FlatMetric{}, x);
    const ExtrinsicPoint b = extrinsic_point(rotated, FlatMetric{}, r * x);
    EXPECT_LT((a.principal - b.principal).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(a.scalar_curvature, b.scalar_curvature, 1e-12);
  }
}

TEST(Graphgeom, PrincipalCurvaturesAgainstGeneralizedEigenproblem) {
  const RandomAnalyticField u(8, 3);
  const auto base = round_sphere_metric(false);
  const VectorXd x = vec({0.2, 0.5, -0.3});
  const ExtrinsicPoint p = extrinsic_point(u, *base, x);
  // A = gM^-1 B with B symmetric: solve B v = lambda gM v.
  const MatrixXd b = p.induced_metric * p.shape;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ges(0.5 * (b + b.transpose()), p.induced_metric);
  EXPECT_LT((ges.eigenvalues() - p.principal).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(p.principal.sum(), p.mean, 1e-12);
}

TEST(Graphgeom, GaussRelationMatchesIntrinsicCurvature) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RandomAnalyticField u(seed, 3);
    const VectorXd x = vec({0.1, -0.3, 0.2});
    const double ext = extrinsic_point(u, FlatMetric{}, x).scalar_curvature;
    EXPECT_NEAR(ext, intrinsic_scalar_curvature(u, FlatMetric{}, x), 1e-5);
    const auto round = round_sphere_metric(false);
    EXPECT_NEAR(extrinsic_point(u, *round, x).scalar_curvature, intrinsic_scalar_curvature(u, *round, x), 1e-5);
  }
}

TEST(Graphgeom, ParaboloidSlice) {
  const QuadraticCupField u;
  const SliceFrame f = regular_slice(u, FlatMetric{}, 0.5, vec({1, 0}));
  EXPECT_NEAR(f.cos_angle, 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.mean_sigma, 1.0, 1e-14);
  EXPECT_NEAR(f.minor(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(f.eta[0], -1.0, 1e-15);
  EXPECT_NEAR(minor_relation_residual(f, extrinsic_point(u, FlatMetric{}, vec({1, 0}))), 0.0, 1e-14);
}

TEST(Graphgeom, AdaptedBasisIsOrthonormal) {
  const RandomAnalyticField u(21, 3);
  const auto base = round_sphere_metric(false);
  const VectorXd x = vec({0.4, 0.1, -0.2});
  const SliceFrame f = regular_slice(u, *base, u.eval_value(x), x);
  const MatrixXd g = base->components(x);
  EXPECT_LT((f.basis.transpose() * g * f.basis - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((f.basis.col(0) + f.eta).norm(), 1e-14);
}

TEST(Graphgeom, SliceMinorRelationOnRandomFields) {
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const RandomAnalyticField u(seed, 3);
    const VectorXd x = vec({0.5, -0.4, 0.3});
    const auto base = round_sphere_metric(false);
    const SliceFrame f = regular_slice(u, *base, u.eval_value(x), x);
    EXPECT_LT(minor_relation_residual(f, extrinsic_point(u, *base, x)), 1e-12);
  }
}

TEST(Graphgeom, CriticalAndOffLevelPoints) {
  const QuadraticCupField u;
  const SliceResult r = level_slice(u, FlatMetric{}, 0.0, vec({0, 0}));
  EXPECT_EQ(r.outcome, SliceOutcome::CriticalPoint);
  EXPECT_FALSE(r.frame.has_value());
  try {
    regular_slice(u, FlatMetric{}, 0.0, vec({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonRegularPoint);
  }
  try {
    regular_slice(u, FlatMetric{}, 0.5, vec({1e-7, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
  }
  try {
    regular_slice(u, FlatMetric{}, 5e-15, vec({1e-7, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonRegularPoint);
  }
}

TEST(Graphgeom, FiniteDifferenceSliceConverges) {
  auto u = std::make_shared<RandomAnalyticField>(12, 2);
  const VectorXd x = vec({0.6, 0.2});
  const double level = u->eval_value(x);
  const SliceFrame exact = regular_slice(*u, FlatMetric{}, level, x);
  double prev = 0.0;
  for (int k = 0; k < 3; ++k) {
    const FiniteDifferenceField fd(u, 0.01 / std::pow(2.0, k));
    const SliceFrame f = regular_slice(fd, FlatMetric{}, level, x);
    const double err = std::abs(f.mean_sigma - exact.mean_sigma);
    if (k > 0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.25);
    prev = err;
  }
}
