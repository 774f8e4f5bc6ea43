#pragma once

// Extrinsic geometry of graphs under the conformal change phi^-2 (g + dt^2),
// and the explicit mean curvature operators of graphs in R^{n+1} with the
// spherical and the Euclidean metric.

#include "curvkit/ambient.hpp"
#include "curvkit/graphgeom.hpp"

#include <optional>

namespace curvkit {

struct ConformalExtrinsicPoint {
  ExtrinsicPoint underlying;
  double phi = 1.0;
  Eigen::VectorXd phi_gradient;  // spatial partials
  double phi_t = 0.0;
  /// mu(phi) = d phi(nu), nu the product-metric unit normal.
  double mu = 0.0;
  Eigen::MatrixXd shape;
  double mean = 0.0;
  double norm_a2 = 0.0;
  Eigen::VectorXd principal;
  /// Only for the round-sphere ambient: n(n-1) + Hbar^2 - |Abar|^2.
  std::optional<double> scalar_curvature;
};

/// d phi(nu) for the product-metric upward normal of `point`.
double normal_derivative(const ExtrinsicPoint& point, const FactorJet& phi);

/// Abar = phi A + mu I. Throws ParameterOutOfRange when phi <= 0.
Eigen::MatrixXd conformal_shape(const ExtrinsicPoint& point, double phi, double mu);

/// Hbar = phi H + n mu (the trace of conformal_shape, evaluated separately).
double conformal_mean(const ExtrinsicPoint& point, double phi, double mu);

ConformalExtrinsicPoint conformal_point(const ScalarField& field, const AmbientSpec& ambient, const Eigen::VectorXd& x);

struct SphericalPhi {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// phi = (1 + |X|^2) / 2 and its gradient X at X in R^{n+1}.
SphericalPhi spherical_phi(const Eigen::VectorXd& point);

/// Mean curvature of the graph of u in (R^{n+1}, g_S), direct formula:
///   (1+|x|^2+u^2)/2 * sum (delta_ij - u_i u_j/W^2) u_ij / W + n (u - x.Du) / W.
double H_spherical(const ScalarField& field, const Eigen::VectorXd& x);

/// Euclidean mean curvature of the graph: sum (delta_ij - u_i u_j/W^2) u_ij / W.
double H_euclidean(const ScalarField& field, const Eigen::VectorXd& x);

struct ConformalSliceTrace {
  /// (Abar|1) read off the conformal shape operator in the adapted basis.
  Eigen::MatrixXd minor_bar;
  /// <nu,eta> Abar_Sigma + <nu,dt> phi_t I.
  Eigen::MatrixXd minor_bar_predicted;
  /// Abar_Sigma = phi A_Sigma + eta(phi) I and its trace.
  Eigen::MatrixXd shape_sigma_bar;
  double mean_sigma_bar = 0.0;
  /// <nu,eta> Hbar_Sigma + (n-1) <nu,dt> phi_t.
  double trace_bar = 0.0;
  /// Max-norm of minor_bar - minor_bar_predicted.
  double residual = 0.0;
};

/// Throws NonRegularPoint for a degenerate frame and ParameterOutOfRange for phi <= 0.
ConformalSliceTrace conformal_slice_trace(const SliceFrame& frame, const ConformalExtrinsicPoint& point,
                                          double eta_phi, double phi_t);

struct ConformalSlice {
  SliceFrame frame;
  ConformalExtrinsicPoint point;
  double eta_phi = 0.0;
  ConformalSliceTrace trace;
};

ConformalSlice conformal_slice(const ScalarField& field, const AmbientSpec& ambient, double level,
                               const Eigen::VectorXd& x, const SliceOptions& options = {});

/// Mean curvature of the coordinate sphere |x| = radius in the slice
/// {t = level} of (R^{n+1}, g_S), inward normal, computed through
/// level_slice on a radial field and the conformal change of A_Sigma.
double coordinate_sphere_mean_curvature(double radius, double level, int n);

}  // namespace curvkit
