#include "curvkit/conformal.hpp"

#include "curvkit/error.hpp"

#include <cmath>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double normal_derivative(const ExtrinsicPoint& point, const FactorJet& phi) {
  const auto n = point.x.size();
  return point.normal.head(n).dot(phi.spatial_gradient) + point.normal[n] * phi.dt;
}

MatrixXd conformal_shape(const ExtrinsicPoint& point, double phi, double mu) {
  if (!(phi > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "conformal factor must be positive");
  const auto n = point.shape.rows();
  return phi * point.shape + mu * MatrixXd::Identity(n, n);
}

double conformal_mean(const ExtrinsicPoint& point, double phi, double mu) {
  if (!(phi > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "conformal factor must be positive");
  return phi * point.mean + static_cast<double>(point.x.size()) * mu;
}

ConformalExtrinsicPoint conformal_point(const ScalarField& field, const AmbientSpec& ambient, const VectorXd& x) {
  ConformalExtrinsicPoint c;
  c.underlying = extrinsic_point(field, *ambient.base, x);
  const auto& p = c.underlying;
  FactorJet fj{1.0, VectorXd::Zero(x.size()), 0.0};
  if (ambient.factor) fj = ambient.factor->eval(x, p.u);
  c.phi = fj.value;
  c.phi_gradient = fj.spatial_gradient;
  c.phi_t = fj.dt;
  c.mu = normal_derivative(p, fj);
  c.shape = conformal_shape(p, c.phi, c.mu);
  c.mean = c.shape.trace();
  c.norm_a2 = (c.shape * c.shape).trace();
  c.principal = principal_curvatures(c.shape, p.induced_metric);
  if (ambient.is_round_sphere()) {
    const double n = static_cast<double>(x.size());
    c.scalar_curvature = n * (n - 1.0) + c.mean * c.mean - c.norm_a2;
  }
  return c;
}

SphericalPhi spherical_phi(const VectorXd& point) { return {0.5 * (1.0 + point.squaredNorm()), point}; }

namespace {

double euclidean_operator(const Jet& j) {
  const double w2 = 1.0 + j.gradient.squaredNorm();
  const auto n = j.gradient.size();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      s += ((i == k ? 1.0 : 0.0) - j.gradient[i] * j.gradient[k] / w2) * j.hessian(i, k);
    }
  }
  return s / std::sqrt(w2);
}

}  // namespace

double H_spherical(const ScalarField& field, const VectorXd& x) {
  const Jet j = field.eval_jet(x);
  const double w = std::sqrt(1.0 + j.gradient.squaredNorm());
  const double n = static_cast<double>(x.size());
  const double factor = 0.5 * (1.0 + x.squaredNorm() + j.value * j.value);
  return factor * euclidean_operator(j) + n / w * (j.value - x.dot(j.gradient));
}

double H_euclidean(const ScalarField& field, const VectorXd& x) { return euclidean_operator(field.eval_jet(x)); }

ConformalSliceTrace conformal_slice_trace(const SliceFrame& frame, const ConformalExtrinsicPoint& point,
                                          double eta_phi, double phi_t) {
  if (!(frame.grad_norm > 0.0) || frame.shape_sigma.rows() == 0) {
    throw Error(ErrorKind::NonRegularPoint, "slice frame is degenerate");
  }
  if (!(point.phi > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "conformal factor must be positive");
  const auto m = frame.shape_sigma.rows();
  const MatrixXd id = MatrixXd::Identity(m, m);

  ConformalSliceTrace t;
  t.minor_bar = in_adapted_basis(point.shape, frame).bottomRightCorner(m, m);
  t.shape_sigma_bar = point.phi * frame.shape_sigma + eta_phi * id;
  t.mean_sigma_bar = t.shape_sigma_bar.trace();
  t.minor_bar_predicted = frame.cos_angle * t.shape_sigma_bar + frame.normal_time_component * phi_t * id;
  t.trace_bar = frame.cos_angle * t.mean_sigma_bar + static_cast<double>(m) * frame.normal_time_component * phi_t;
  t.residual = (t.minor_bar - t.minor_bar_predicted).cwiseAbs().maxCoeff();
  return t;
}

ConformalSlice conformal_slice(const ScalarField& field, const AmbientSpec& ambient, double level, const VectorXd& x,
                               const SliceOptions& options) {
  ConformalSlice s;
  s.frame = regular_slice(field, *ambient.base, level, x, options);
  s.point = conformal_point(field, ambient, x);
  s.eta_phi = s.point.phi_gradient.dot(s.frame.eta);
  s.trace = conformal_slice_trace(s.frame, s.point, s.eta_phi, s.point.phi_t);
  return s;
}

double coordinate_sphere_mean_curvature(double radius, double level, int n) {
  if (!(radius > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "radius must be positive");
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "need n >= 2");
  // u = level + (|x|^2 - radius^2) / 2 has the sphere as its level set and an
  // outward gradient, so eta points inward.
  const QuadraticCupField field(Eigen::VectorXd{}, level - 0.5 * radius * radius);
  const FlatMetric flat;
  const VectorXd x = radius * VectorXd::Unit(n, 0);
  const SliceFrame f = regular_slice(field, flat, level, x);
  const FactorJet phi = SphericalFactor().eval(x, level);
  const double eta_phi = phi.spatial_gradient.dot(f.eta);
  return phi.value * f.mean_sigma + static_cast<double>(n - 1) * eta_phi;
}

}  // namespace curvkit
