#include "curvkit/graphgeom.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::VectorXd principal_curvatures(const MatrixXd& shape, const MatrixXd& metric) {
  Eigen::LLT<MatrixXd> llt(metric);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "induced metric");
  const MatrixXd second_form = metric * shape;
  const MatrixXd l = llt.matrixL();
  MatrixXd s = l.triangularView<Eigen::Lower>().solve(second_form);
  s = l.triangularView<Eigen::Lower>().solve(s.transpose()).transpose();
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

ExtrinsicPoint extrinsic_point(const ScalarField& field, const BaseMetric& base, const VectorXd& x) {
  const Jet jet = field.eval_jet(x);
  ExtrinsicPoint p;
  p.x = x;
  p.u = jet.value;
  p.base = metric_jet(base, x);
  const auto& gi = p.base.g_inv;

  p.du = jet.gradient;
  p.grad = gi * p.du;
  p.grad_norm = std::sqrt(std::max(0.0, p.du.dot(p.grad)));
  p.w = std::sqrt(1.0 + p.grad_norm * p.grad_norm);
  p.hessian = jet.hessian - p.base.contract_christoffel(p.du);

  const MatrixXd proj = gi - p.grad * p.grad.transpose() / (p.w * p.w);
  p.shape = proj * p.hessian / p.w;
  p.induced_metric = p.base.g + p.du * p.du.transpose();

  const auto n = x.size();
  p.normal.resize(n + 1);
  p.normal.head(n) = -p.grad / p.w;
  p.normal[n] = 1.0 / p.w;

  p.mean = p.shape.trace();
  p.norm_a2 = (p.shape * p.shape).trace();
  p.principal = principal_curvatures(p.shape, p.induced_metric);

  const VectorXd horizontal = p.normal.head(n);
  p.scalar_curvature = p.mean * p.mean - p.norm_a2 + p.base.scalar -
                       2.0 * horizontal.dot(p.base.ricci * horizontal);
  return p;
}

double intrinsic_scalar_curvature(const ScalarField& field, const BaseMetric& base, const VectorXd& x,
                                  const MetricSteps& steps) {
  const double reach = steps.reach(x) + base.stencil_reach(x);
  if (!field.domain().contains(x, reach + field.boundary_band(x))) {
    throw Error(ErrorKind::OutOfDomain, "point is inside the finite-difference boundary band");
  }
  auto induced = [&](const VectorXd& y) -> MatrixXd {
    const VectorXd du = field.eval_jet(y).gradient;
    return base.components(y) + du * du.transpose();
  };
  return curvature_from_components(induced, x, steps).scalar;
}

namespace {

MatrixXd adapted_basis(const VectorXd& grad, double grad_norm, const MatrixXd& g) {
  const auto n = grad.size();
  MatrixXd basis(n, n);
  basis.col(0) = grad / grad_norm;

  // Drop the coordinate axis most aligned with grad u (lowest index on ties)
  // and orthonormalise the rest in index order.
  const VectorXd lowered = g * basis.col(0);
  Eigen::Index drop = 0;
  double best = -1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = std::abs(lowered[k]) / std::sqrt(g(k, k));
    if (a > best * (1.0 + 1e-12)) {
      best = a;
      drop = k;
    }
  }
  Eigen::Index col = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == drop) continue;
    VectorXd v = VectorXd::Unit(n, k);
    for (Eigen::Index c = 0; c < col; ++c) v -= basis.col(c).dot(g * v) * basis.col(c);
    for (Eigen::Index c = 0; c < col; ++c) v -= basis.col(c).dot(g * v) * basis.col(c);
    basis.col(col++) = v / std::sqrt(v.dot(g * v));
  }
  return basis;
}

// nabla (grad u / |grad u|) as a (1,1) tensor.
MatrixXd normalized_gradient_derivative(const ScalarField& field, const BaseMetric& base, const ExtrinsicPoint& p) {
  const auto n = p.x.size();
  const VectorXd unit = p.grad / p.grad_norm;
  const auto step = field.difference_step(p.x);
  if (!step) {
    const MatrixXd proj = p.base.g_inv - unit * unit.transpose();
    return proj * p.hessian / p.grad_norm;
  }
  auto unit_at = [&](const VectorXd& y) -> VectorXd {
    const VectorXd du = field.eval_jet(y).gradient;
    const VectorXd up = base.jet(y).g_inv * du;
    return up / std::sqrt(du.dot(up));
  };
  MatrixXd k(n, n);
  const double h = *step;
  for (Eigen::Index j = 0; j < n; ++j) {
    VectorXd plus = p.x, minus = p.x;
    plus[j] += h;
    minus[j] -= h;
    k.col(j) = (unit_at(plus) - unit_at(minus)) / (2.0 * h);
  }
  for (Eigen::Index i = 0; i < n; ++i) k.row(i) += (p.base.christoffel[i] * unit).transpose();
  return k;
}

}  // namespace

MatrixXd in_adapted_basis(const MatrixXd& shape, const SliceFrame& frame) {
  if (shape.rows() != frame.basis.rows()) throw Error(ErrorKind::DimensionMismatch, "shape vs slice frame");
  return frame.basis.inverse() * shape * frame.basis;
}

SliceResult level_slice(const ScalarField& field, const BaseMetric& base, double level, const VectorXd& x,
                        const SliceOptions& options) {
  const ExtrinsicPoint p = extrinsic_point(field, base, x);
  if (std::abs(p.u - level) > options.level_tolerance * std::max(1.0, std::abs(level))) {
    throw Error(ErrorKind::PreconditionViolated,
                fmt::format("point is not on the level set: u = {} vs level {}", p.u, level));
  }
  SliceResult result;
  result.grad_norm = p.grad_norm;
  if (p.grad_norm == 0.0 && field.mode() == JetMode::Analytic) {
    result.outcome = SliceOutcome::CriticalPoint;
    return result;
  }
  if (p.grad_norm < options.regularity) {
    throw Error(ErrorKind::NonRegularPoint, fmt::format("|grad u| = {} below {}", p.grad_norm, options.regularity));
  }

  const auto n = x.size();
  SliceFrame f;
  f.level = level;
  f.x = x;
  f.grad_norm = p.grad_norm;
  f.eta = -p.grad / p.grad_norm;
  f.basis = adapted_basis(p.grad, p.grad_norm, p.base.g);
  f.cos_angle = p.grad_norm / p.w;
  f.normal_time_component = 1.0 / p.w;

  const MatrixXd to_basis = f.basis.transpose() * p.base.g;  // inverse of an orthonormal basis
  const MatrixXd k = normalized_gradient_derivative(field, base, p);
  f.shape_sigma = (to_basis * k * f.basis).bottomRightCorner(n - 1, n - 1);
  f.mean_sigma = f.shape_sigma.trace();
  f.minor = (to_basis * p.shape * f.basis).bottomRightCorner(n - 1, n - 1);

  result.outcome = SliceOutcome::Regular;
  result.frame = std::move(f);
  return result;
}

SliceFrame regular_slice(const ScalarField& field, const BaseMetric& base, double level, const VectorXd& x,
                         const SliceOptions& options) {
  SliceResult r = level_slice(field, base, level, x, options);
  if (r.outcome != SliceOutcome::Regular) {
    throw Error(ErrorKind::NonRegularPoint, "critical point of the height function");
  }
  return std::move(*r.frame);
}

double minor_relation_residual(const SliceFrame& frame, const ExtrinsicPoint& point) {
  if (point.shape.rows() != frame.basis.rows() || frame.shape_sigma.rows() + 1 != point.shape.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "slice frame and extrinsic point have different dimensions");
  }
  if ((frame.x - point.x).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + frame.x.norm())) {
    throw Error(ErrorKind::PreconditionViolated, "slice frame and extrinsic point are at different locations");
  }
  const auto m = frame.shape_sigma.rows();
  const MatrixXd minor = in_adapted_basis(point.shape, frame).bottomRightCorner(m, m);
  return (minor - frame.cos_angle * frame.shape_sigma).cwiseAbs().maxCoeff();
}

}  // namespace curvkit
