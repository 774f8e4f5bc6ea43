#pragma once

// Explicit rotation hypersurfaces: the Euclidean profile
// f(z) = (sqrt z + 1) sqrt(1 - z^2), and the glued spherical example made of
// the graph of u over a <= r < 1 and the cap v(r) = sqrt((1-a)/2) + sqrt(1 - r^2).

#include "curvkit/fields.hpp"

#include <string_view>
#include <vector>

namespace curvkit {

enum class ProfileKind { EuclidF, SphereU, SphereV };

std::string_view to_string(ProfileKind kind);

struct RevolutionProfile {
  ProfileKind kind = ProfileKind::EuclidF;
  /// Parameter a in (0, 1) of the spherical pieces.
  double a = 0.5;

  static RevolutionProfile euclid_f();
  /// Throws ParameterOutOfRange unless 0 < a < 1.
  static RevolutionProfile sphere_u(double a);
  static RevolutionProfile sphere_v(double a);

  /// Closed interval of the profile variable.
  double lower() const;
  double upper() const;
};

/// Closed-form value and derivatives. Throws OutOfDomain outside [lower, upper];
/// `singular` marks the vertical tangents (s = 1 for u and v, s = 0 for f).
ProfileJet profile_jet(const RevolutionProfile& profile, double s);

/// Principal curvature -(1-a)/4 of the cap (both directions).
double cap_curvature(double a);

/// 2 + 2 kappa^2 on the cap.
double cap_scalar_curvature(double a);

struct PrincipalPair {
  double lambda1 = 0.0;  // radial direction
  double lambda2 = 0.0;  // rotation directions
  /// 2 + 2 lambda1 lambda2.
  double scalar = 0.0;
};

/// Closed-form curvatures of the graph of u in the round 3-sphere, a <= r < 1:
///   lambda1 = [u - r u' + phi u'' / W^2] / W,  lambda2 = [u - r u' + phi u' / r] / W
/// with phi = (1 + u^2 + r^2) / 2 and W = sqrt(1 + u'^2).
PrincipalPair principal_curvatures_u(double a, double r);

struct MonotonicityReport {
  double a = 0.0;
  long samples = 0;
  /// |u(a)| and |u'(a)|.
  double value_at_a = 0.0;
  double slope_at_a = 0.0;
  bool value_zero = false;
  bool slope_zero = false;
  /// min of u' over grid points r > a.
  double min_slope = 0.0;
  bool slope_positive = false;
  /// min of u'' - u'(1 + u'^2) over the grid, and its value at r = a.
  double min_second_order_margin = 0.0;
  double second_order_margin_at_a = 0.0;
  bool second_order = false;
  /// Smallest radial curvature where the second-order margin is positive.
  double min_lambda1 = 0.0;
  bool lambda1_positive = false;

  bool all() const { return value_zero && slope_zero && slope_positive && second_order && lambda1_positive; }
};

/// Throws ParameterOutOfRange unless 0 < a < 1 and the grid lies in [a, 1).
MonotonicityReport monotonicity_checks(double a, const std::vector<double>& grid);

/// count points a + i (1 - a) / count, i = 0..count-1.
std::vector<double> profile_grid(double a, int count);

struct JunctionReport {
  double a = 0.0;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> lambda1;
  std::vector<double> lambda2;
  /// Polynomial extrapolation to r = 1 in the variable sqrt(1 - r).
  double value_limit = 0.0;
  double lambda1_limit = 0.0;
  double lambda2_limit = 0.0;
  double cap_value = 0.0;
  double cap_curvature = 0.0;
  /// lambda on u continues to sign_map * kappa on the cap: the upward normal
  /// of u turns to -x/|x| at the vertical tangent while the cap's upward
  /// normal there is +x/|x|.
  int sign_map = -1;
  double tolerance = 1e-3;
  double value_error = 0.0;
  double lambda1_error = 0.0;
  double lambda2_error = 0.0;
  bool pass = false;
};

/// One-sided limits along u as r -> 1-. Throws ParameterOutOfRange for
/// fewer than two radii, radii outside (a, 1) or a non-increasing sequence.
JunctionReport junction_c2_check(double a, const std::vector<double>& radii, double tolerance = 1e-3);

/// 1 - 10^-k for k = k_min..k_max.
std::vector<double> junction_radii(int k_min = 2, int k_max = 6);

/// K = -f''/(f (1 + f'^2)^2) for the rotation of r = f(z). Throws OutOfDomain unless 0 < z < 1.
double gauss_curvature_f(double z);

/// u(x) = p(|x|) over the natural domain of the profile (open annulus
/// a < |x| < 1 for u, open unit ball for v).
FieldPtr revolution_field(const RevolutionProfile& profile);

/// The rotation surface of f written as the graph x = sqrt(f(z)^2 - y^2)
/// over the (y, z) plane, on |y| < f(z), 0 < z < 1.
FieldPtr rotation_f_graph();

struct GluedRow {
  int piece = 0;  // 0: graph of u, 1: cap v
  double r = 0.0;
  double value = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double scalar = 0.0;
};

/// u on profile_grid(a, count) followed by v on r = i / count, i = 0..count.
std::vector<GluedRow> spherical_glued_sweep(double a, int count);

struct ConeRow {
  double z = 0.0;
  double f = 0.0;
  double gauss = 0.0;
  double scalar = 0.0;
};

/// count points equally spaced on [lo, hi].
std::vector<ConeRow> euclid_cone_sweep(int count, double lo = 0.01, double hi = 0.99);

}  // namespace curvkit
