#pragma once

// Cone barriers psi_lambda(x) = lambda (1 - |x|) slid down onto a height
// function over an annulus a < |x| < 1, and the curvature bounds at the
// first touching point.

#include "curvkit/fields.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace curvkit {

double barrier_value(double lambda, const Eigen::VectorXd& x);

struct BarrierSampling {
  int radial = 512;
  /// Equally spaced angles for n = 2, low-discrepancy directions otherwise.
  int angular = 128;
  std::uint64_t seed = 0;
};

struct BarrierOptions {
  double bisection_tolerance = 1e-10;
  double touch_tolerance = 1e-8;
  /// Newton refinement of an interior touching point.
  bool refine = true;
  BarrierSampling sampling;
};

enum class SlideOutcome {
  /// First touch at an interior sample, refined to a stationary point of u / (1 - |x|).
  Touch,
  /// The sampled maximum sits on the innermost or outermost ring.
  BoundaryTouch,
  /// max u is zero within tolerance; lambda_star = 0.
  Degenerate,
};

std::string_view to_string(SlideOutcome outcome);

struct BarrierRun {
  std::string field;
  int n = 2;
  double a = 0.0;
  double a_prime = 0.0;
  double lambda_max = 0.0;
  /// Bisection result on the samples.
  double lambda_sampled = 0.0;
  /// u(x0) / (1 - |x0|) at the (refined) touching point.
  double lambda_star = 0.0;
  SlideOutcome outcome = SlideOutcome::Degenerate;
  Eigen::VectorXd x0;
  double u0 = 0.0;
  double grad_norm = 0.0;
  /// D_r u = (x / |x|) . Du at x0.
  double radial_derivative = 0.0;
  /// max over samples of u - psi_{lambda_sampled}; <= 0 up to the bisection tolerance.
  double max_excess = 0.0;
  long samples = 0;
  int bisection_steps = 0;
  int newton_steps = 0;
  double bisection_tolerance = 0.0;
  double touch_tolerance = 0.0;

  bool successful() const { return outcome == SlideOutcome::Touch; }
};

/// Throws EmptyDomain when no sample of a' <= |x| < 1 lies in the field's
/// domain, NoTouch when u < -touch_tolerance on every sample, and
/// PreconditionViolated when psi_{lambda_max} does not dominate u or the
/// radii are not 0 <= a < a' < 1.
BarrierRun slide(const ScalarField& field, int n, double a, double a_prime, double lambda_max,
                 const BarrierOptions& options = {});

/// ((n-1)/radius) (1 + level^2 - radius^2) / 2: mean curvature of the
/// coordinate sphere |x| = radius in the slice t = level of the round sphere,
/// inward normal. Throws ParameterOutOfRange unless 0 < radius <= 1.
double ring_mean_curvature(double radius, double level, int n);

struct ComparisonBounds {
  /// (n-1) u / |Du| at the touching point.
  double upper = 0.0;
  /// (n-1)(1 - |x0|).
  double upper_cap = 0.0;
  double lower = 0.0;
  /// False inside the margin around |x0| = 1, where both sides degenerate.
  bool ordering_checked = false;
  bool ordering_holds = false;
};

/// Throws NonRegularPoint when |Du| < regularity.
ComparisonBounds comparison_bounds(double radius, double level, std::optional<double> grad_norm, int n,
                                   double margin = 1e-3, double regularity = 1e-6);
ComparisonBounds comparison_bounds(const BarrierRun& run, double margin = 1e-3, double regularity = 1e-6);

}  // namespace curvkit
