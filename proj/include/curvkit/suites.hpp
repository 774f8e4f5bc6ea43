#pragma once

// Seeded verification sweeps over random analytic fields.

#include "curvkit/inequality.hpp"
#include "curvkit/sampling.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curvkit {

struct FieldDraw {
  int index = 0;
  std::uint64_t seed = 0;
  int n = 2;
  double level = 0.0;
};

/// Field seeds, dimensions in [n_min, n_max] and slice levels
/// u(0) + U(0.1, 0.5), all derived from `seed`.
std::vector<FieldDraw> draw_fields(int count, int n_min, int n_max, std::uint64_t seed);

struct SuiteConfig {
  int fields = 50;
  int points = 20;
  std::uint64_t seed = 1;
  int n_min = 2;
  int n_max = 3;
  SliceOptions slice;
};

struct PointResidual {
  int field = 0;
  Eigen::VectorXd x;
  double level = 0.0;
  double residual = 0.0;
};

struct ResidualSuiteResult {
  long evaluated = 0;
  long skipped = 0;
  double max_residual = 0.0;
  std::optional<PointResidual> worst;
  std::vector<PointResidual> points;
};

/// |(A|1) - <nu,eta> A_Sigma| at the sampled slice points. A step switches
/// every field to finite-difference jets with that step.
ResidualSuiteResult run_minor_suite(const SuiteConfig& config, const BaseMetric& base,
                                    std::optional<double> fd_step = std::nullopt);

struct ConvergenceResult {
  std::vector<double> steps;
  std::vector<double> residuals;
  /// log2 of successive residual ratios.
  std::vector<double> orders;
};

/// Minor-relation residual at one slice point under FD jets with steps h, h/2, h/4, ...
ConvergenceResult minor_fd_convergence(const FieldPtr& field, const BaseMetric& base, double level,
                                       const Eigen::VectorXd& x, double h, int halvings = 2);

/// |R_extrinsic - R_intrinsic| at `points` low-discrepancy points of the
/// ball of radius 0.6 per field.
ResidualSuiteResult run_gauss_suite(const SuiteConfig& config, const BaseMetric& base);

struct GreatSphereResult {
  long points = 0;
  double max_abs_mean = 0.0;
  double max_route_difference = 0.0;
};

/// H of u = 0 and of the unit hemisphere in the round ambient at `points`
/// interior points each, via the explicit operator and the conformal route.
GreatSphereResult run_great_sphere_suite(int points, int n, std::uint64_t seed);

/// Largest |H_spherical - conformal mean| over random fields.
ResidualSuiteResult run_spherical_route_suite(const SuiteConfig& config);

struct InequalitySuiteResult {
  InequalityKind which = InequalityKind::Prod;
  long evaluated = 0;
  long skipped = 0;
  double min_gap = 0.0;
  long violations = 0;
  double tolerance = 1e-8;
  /// max |gap - decomposition_gap| / max(1, |lhs|).
  double max_decomposition_mismatch = 0.0;
  std::vector<std::pair<int, InequalityReport>> reports;
};

/// Prod uses `ambient.base`, Phi the whole ambient; Euclid and Sphere ignore it.
InequalitySuiteResult run_inequality_suite(InequalityKind which, const SuiteConfig& config,
                                           const AmbientSpec& ambient, double tolerance = 1e-8);

}  // namespace curvkit
