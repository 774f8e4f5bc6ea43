#pragma once

// Extrinsic geometry of the graph t = u(x) in the product N x R with metric g + dt^2.
//
// Sign conventions: the normal is the upward one,
//   nu = (-grad u, 1) / W,  W = sqrt(1 + |grad u|^2),
// and the shape operator is
//   A^i_j = (g^ik - u^i u^k / W^2) (nabla_j nabla_k u) / W = nabla_j (u^i / W),
// so convex-up graphs have H > 0 and the upper cap of a sphere of radius r
// has both principal curvatures equal to -1/r.

#include "curvkit/fields.hpp"
#include "curvkit/metric.hpp"

#include <Eigen/Dense>

#include <optional>

namespace curvkit {

struct ExtrinsicPoint {
  Eigen::VectorXd x;
  double u = 0.0;
  /// Coordinate gradient du and the g-gradient grad u = g^-1 du.
  Eigen::VectorXd du;
  Eigen::VectorXd grad;
  /// |grad u|_g and W = sqrt(1 + |grad u|^2).
  double grad_norm = 0.0;
  double w = 1.0;
  /// Covariant Hessian nabla_j nabla_k u.
  Eigen::MatrixXd hessian;
  /// Upward unit normal, coordinate components (x^1..x^n, t).
  Eigen::VectorXd normal;
  /// A^i_j in graph coordinates.
  Eigen::MatrixXd shape;
  Eigen::MatrixXd induced_metric;
  double mean = 0.0;
  double norm_a2 = 0.0;
  /// Ascending eigenvalues of the shape operator.
  Eigen::VectorXd principal;
  /// R(g^M) from the Gauss relation.
  double scalar_curvature = 0.0;
  MetricJet base;
};

/// Throws OutOfDomain / NonFinite from the field, NotPositiveDefinite from the metric.
ExtrinsicPoint extrinsic_point(const ScalarField& field, const BaseMetric& base, const Eigen::VectorXd& x);

/// Ascending eigenvalues of a shape operator that is self-adjoint with respect
/// to `metric`, via the symmetric matrix L^T A L^-T with metric = L L^T.
Eigen::VectorXd principal_curvatures(const Eigen::MatrixXd& shape, const Eigen::MatrixXd& metric);

/// Scalar curvature of g^M_ij = g_ij + u_i u_j computed directly from the
/// induced metric components by finite differences.
double intrinsic_scalar_curvature(const ScalarField& field, const BaseMetric& base, const Eigen::VectorXd& x,
                                  const MetricSteps& steps = {});

struct SliceFrame {
  double level = 0.0;
  Eigen::VectorXd x;
  /// Unit normal of the slice in (N, g): eta = -grad u / |grad u|, so <nu, eta> >= 0.
  Eigen::VectorXd eta;
  /// g-orthonormal adapted basis (columns); column 0 is grad u / |grad u|.
  Eigen::MatrixXd basis;
  /// (n-1)x(n-1) shape operator of the slice in the basis columns 1..n-1.
  Eigen::MatrixXd shape_sigma;
  double mean_sigma = 0.0;
  /// <nu, eta> = |grad u| / W.
  double cos_angle = 0.0;
  /// <nu, dt> = 1 / W.
  double normal_time_component = 0.0;
  /// (A|1): A in the adapted basis with the first row and column removed.
  Eigen::MatrixXd minor;
  double grad_norm = 0.0;
};

enum class SliceOutcome {
  Regular,
  /// grad u vanishes exactly (analytic jets); no slice frame exists.
  CriticalPoint,
};

struct SliceResult {
  SliceOutcome outcome = SliceOutcome::Regular;
  std::optional<SliceFrame> frame;
  double grad_norm = 0.0;
};

struct SliceOptions {
  /// Points with |grad u| below this are not regular.
  double regularity = 1e-6;
  /// Allowed |u(x) - level|.
  double level_tolerance = 1e-8;
};

/// Level set {u = level} through x. Throws NonRegularPoint when
/// 0 < |grad u| < regularity (or |grad u| == 0 for non-analytic jets) and
/// PreconditionViolated when x is not on the level set.
SliceResult level_slice(const ScalarField& field, const BaseMetric& base, double level, const Eigen::VectorXd& x,
                        const SliceOptions& options = {});

/// Convenience: level_slice that throws NonRegularPoint on critical points too.
SliceFrame regular_slice(const ScalarField& field, const BaseMetric& base, double level, const Eigen::VectorXd& x,
                         const SliceOptions& options = {});

/// The shape operator `shape` expressed in the adapted basis.
Eigen::MatrixXd in_adapted_basis(const Eigen::MatrixXd& shape, const SliceFrame& frame);

/// Max-norm of (A|1) - <nu, eta> A_Sigma, with (A|1) recomputed from `point`.
double minor_relation_residual(const SliceFrame& frame, const ExtrinsicPoint& point);

}  // namespace curvkit
