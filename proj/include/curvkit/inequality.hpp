#pragma once

// Pointwise checks of the slice inequalities relating H, H_Sigma and the
// scalar curvature of the graph, with equality-case diagnostics.

#include "curvkit/conformal.hpp"

#include <optional>
#include <string_view>

namespace curvkit {

enum class InequalityKind { Prod, Phi, Euclid, Sphere };

std::string_view to_string(InequalityKind kind);
/// Throws Parse for unknown names.
InequalityKind parse_inequality_kind(std::string_view name);

struct EqualityThresholds {
  /// Umbilicity: spread <= relative * (1 + |A_Sigma|); multiplicity: <= relative * (1 + |A|).
  double relative = 1e-6;
};

struct InequalityReport {
  InequalityKind which = InequalityKind::Prod;
  Eigen::VectorXd x;
  double level = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  /// Spread (max - min) of the slice principal curvatures.
  double umbilicity_deviation = 0.0;
  double umbilicity_threshold = 0.0;
  /// Largest distance from the predicted value among the n-1 eigenvalues of
  /// the (conformal) shape operator closest to it.
  double multiplicity_diagnostic = 0.0;
  double multiplicity_threshold = 0.0;
  /// Mean of the slice principal curvatures.
  double kappa = 0.0;
  double predicted_eigenvalue = 0.0;
  bool equality_detected = false;
  /// lhs - rhs rebuilt from the algebraic decomposition of the shape operator
  /// in the adapted basis.
  double decomposition_gap = 0.0;
};

/// Graph in (N x R, g + dt^2). Throws NonRegularPoint off regular slices.
InequalityReport check_prod(const ScalarField& field, const BaseMetric& base, double level, const Eigen::VectorXd& x,
                            const SliceOptions& options = {}, const EqualityThresholds& thresholds = {});

/// Graph in (N x R, phi^-2 (g + dt^2)).
InequalityReport check_phi(const ScalarField& field, const AmbientSpec& ambient, double level,
                           const Eigen::VectorXd& x, const SliceOptions& options = {},
                           const EqualityThresholds& thresholds = {});

/// Flat base; H taken from the explicit Euclidean mean curvature operator.
InequalityReport check_euclid(const ScalarField& field, double level, const Eigen::VectorXd& x,
                              const SliceOptions& options = {}, const EqualityThresholds& thresholds = {});

/// Round unit sphere ambient; H from the explicit spherical operator and R
/// from H^2 = |A|^2 + R - n(n-1).
InequalityReport check_sphere(const ScalarField& field, double level, const Eigen::VectorXd& x,
                              const SliceOptions& options = {}, const EqualityThresholds& thresholds = {});

/// sum_{i<j} a_ij a_ji + 1/(2(n-1)) sum_{2<=i<j} (a_ii - a_jj)^2.
double decomposition_gap(const Eigen::MatrixXd& adapted);

}  // namespace curvkit
