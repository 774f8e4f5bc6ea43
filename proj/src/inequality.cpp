#include "curvkit/inequality.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string_view to_string(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::Prod: return "prod";
    case InequalityKind::Phi: return "phi";
    case InequalityKind::Euclid: return "euclid";
    case InequalityKind::Sphere: return "sphere";
  }
  return "unknown";
}

InequalityKind parse_inequality_kind(std::string_view name) {
  for (auto k : {InequalityKind::Prod, InequalityKind::Phi, InequalityKind::Euclid, InequalityKind::Sphere}) {
    if (name == to_string(k)) return k;
  }
  throw Error(ErrorKind::Parse, fmt::format("unknown inequality '{}'", name));
}

double decomposition_gap(const MatrixXd& a) {
  const auto n = a.rows();
  double products = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) products += a(i, j) * a(j, i);
  double spread = 0.0;
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) spread += (a(i, i) - a(j, j)) * (a(i, i) - a(j, j));
  return products + spread / (2.0 * static_cast<double>(n - 1));
}

namespace {

VectorXd symmetric_eigenvalues(const MatrixXd& m) {
  const MatrixXd sym = 0.5 * (m + m.transpose());
  return Eigen::SelfAdjointEigenSolver<MatrixXd>(sym, Eigen::EigenvaluesOnly).eigenvalues();
}

// Fills the diagnostics from the slice shape operator (orthonormal basis) and
// the principal curvatures of the hypersurface.
void diagnose(InequalityReport& report, const MatrixXd& shape_sigma, const VectorXd& principal, double norm_a2,
              double cos_angle, double offset, const EqualityThresholds& thresholds) {
  const VectorXd sigma_eigs = symmetric_eigenvalues(shape_sigma);
  report.umbilicity_deviation = sigma_eigs.maxCoeff() - sigma_eigs.minCoeff();
  report.umbilicity_threshold = thresholds.relative * (1.0 + shape_sigma.norm());
  report.kappa = sigma_eigs.mean();
  report.predicted_eigenvalue = cos_angle * report.kappa + offset;

  std::vector<double> distances;
  for (Eigen::Index i = 0; i < principal.size(); ++i)
    distances.push_back(std::abs(principal[i] - report.predicted_eigenvalue));
  std::sort(distances.begin(), distances.end());
  report.multiplicity_diagnostic = distances[distances.size() - 2];
  report.multiplicity_threshold = thresholds.relative * (1.0 + std::sqrt(std::max(norm_a2, 0.0)));

  report.equality_detected = report.umbilicity_deviation <= report.umbilicity_threshold &&
                             report.multiplicity_diagnostic <= report.multiplicity_threshold;
}

InequalityReport prod_report(InequalityKind which, const ScalarField& field, const BaseMetric& base, double level,
                             const VectorXd& x, const SliceOptions& options, const EqualityThresholds& thresholds,
                             bool euclidean_mean) {
  const SliceFrame frame = regular_slice(field, base, level, x, options);
  const ExtrinsicPoint p = extrinsic_point(field, base, x);
  const double n = static_cast<double>(frame.x.size());
  const double c = frame.cos_angle;
  const double mean = euclidean_mean ? H_euclidean(field, x) : p.mean;
  const double ric_eta = frame.eta.dot(p.base.ricci * frame.eta);

  InequalityReport r;
  r.which = which;
  r.x = x;
  r.level = level;
  r.lhs = c * mean * frame.mean_sigma;
  r.rhs = 0.5 * p.scalar_curvature - 0.5 * p.base.scalar + c * c * ric_eta +
          n / (2.0 * (n - 1.0)) * c * c * frame.mean_sigma * frame.mean_sigma;
  r.gap = r.lhs - r.rhs;
  r.decomposition_gap = decomposition_gap(in_adapted_basis(p.shape, frame));
  diagnose(r, frame.shape_sigma, p.principal, p.norm_a2, c, 0.0, thresholds);
  return r;
}

}  // namespace

InequalityReport check_prod(const ScalarField& field, const BaseMetric& base, double level, const VectorXd& x,
                            const SliceOptions& options, const EqualityThresholds& thresholds) {
  return prod_report(InequalityKind::Prod, field, base, level, x, options, thresholds, false);
}

InequalityReport check_euclid(const ScalarField& field, double level, const VectorXd& x, const SliceOptions& options,
                              const EqualityThresholds& thresholds) {
  return prod_report(InequalityKind::Euclid, field, FlatMetric{}, level, x, options, thresholds, true);
}

InequalityReport check_phi(const ScalarField& field, const AmbientSpec& ambient, double level, const VectorXd& x,
                           const SliceOptions& options, const EqualityThresholds& thresholds) {
  const ConformalSlice cs = conformal_slice(field, ambient, level, x, options);
  const double n = static_cast<double>(cs.frame.x.size());
  const double bracket = cs.trace.trace_bar;
  const auto& cp = cs.point;

  InequalityReport r;
  r.which = InequalityKind::Phi;
  r.x = x;
  r.level = level;
  r.lhs = cp.mean * bracket;
  r.rhs = 0.5 * (cp.mean * cp.mean - cp.norm_a2) + n / (2.0 * (n - 1.0)) * bracket * bracket;
  r.gap = r.lhs - r.rhs;
  r.decomposition_gap = decomposition_gap(in_adapted_basis(cp.shape, cs.frame));
  diagnose(r, cs.trace.shape_sigma_bar, cp.principal, cp.norm_a2, cs.frame.cos_angle,
           cs.frame.normal_time_component * cp.phi_t, thresholds);
  return r;
}

InequalityReport check_sphere(const ScalarField& field, double level, const VectorXd& x, const SliceOptions& options,
                              const EqualityThresholds& thresholds) {
  const ConformalSlice cs = conformal_slice(field, spherical_ambient(), level, x, options);
  const double n = static_cast<double>(cs.frame.x.size());
  const auto& cp = cs.point;
  const double mean = H_spherical(field, x);
  // On the slice the height coordinate is the level itself.
  const double bracket =
      cs.frame.cos_angle * cs.trace.mean_sigma_bar + (n - 1.0) * cs.frame.normal_time_component * level;
  const double scalar = n * (n - 1.0) + mean * mean - cp.norm_a2;

  InequalityReport r;
  r.which = InequalityKind::Sphere;
  r.x = x;
  r.level = level;
  r.lhs = mean * bracket;
  r.rhs = 0.5 * (scalar - n * (n - 1.0)) + n / (2.0 * (n - 1.0)) * bracket * bracket;
  r.gap = r.lhs - r.rhs;
  r.decomposition_gap = decomposition_gap(in_adapted_basis(cp.shape, cs.frame));
  diagnose(r, cs.trace.shape_sigma_bar, cp.principal, cp.norm_a2, cs.frame.cos_angle,
           cs.frame.normal_time_component * cp.phi_t, thresholds);
  return r;
}

}  // namespace curvkit
