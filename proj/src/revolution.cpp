#include "curvkit/revolution.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_a(double a) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, fmt::format("need 0 < a < 1, got {}", a));
}

ProfileJet jet_u(double a, double r) {
  const double ia = 1.0 / std::sqrt(1.0 - a);
  const double c = 1.0 / std::sqrt(2.0);
  ProfileJet j;
  if (r == 1.0) {
    j.value = std::sqrt((1.0 - a) / 2.0);
    j.first = kInf;
    j.second = kInf;
    j.singular = true;
    return j;
  }
  const double d = std::sqrt(1.0 - r);
  j.value = c * (-2.0 * d - r * ia + 2.0 * std::sqrt(1.0 - a) + a * ia);
  j.first = c * (1.0 / d - ia);
  j.second = c / 2.0 / (d * d * d);
  return j;
}

ProfileJet jet_v(double a, double r) {
  ProfileJet j;
  const double q = std::sqrt(1.0 - r * r);
  j.value = std::sqrt((1.0 - a) / 2.0) + q;
  if (r == 1.0) {
    j.first = -kInf;
    j.second = -kInf;
    j.singular = true;
    return j;
  }
  j.first = -r / q;
  j.second = -1.0 / (q * q * q);
  return j;
}

ProfileJet jet_f(double z) {
  ProfileJet j;
  const double q = std::sqrt(1.0 - z * z);
  const double sz = std::sqrt(z);
  const double p = sz + 1.0;
  j.value = p * q;
  if (z == 0.0) {
    j.first = kInf;
    j.second = -kInf;
    j.singular = true;
    return j;
  }
  if (z == 1.0) {
    j.first = -kInf;
    j.second = -kInf;
    j.singular = true;
    return j;
  }
  const double dp = 0.5 / sz;
  const double ddp = -0.25 / (z * sz);
  const double dq = -z / q;
  const double ddq = -1.0 / (q * q * q);
  j.first = dp * q + p * dq;
  j.second = ddp * q + 2.0 * dp * dq + p * ddq;
  return j;
}

// Polynomial through (s_k, y_k) evaluated at s = 0 (Neville).
double extrapolate_to_zero(const std::vector<double>& s, std::vector<double> y) {
  const std::size_t m = s.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = 0; i + level < m; ++i)
      y[i] = (s[i + level] * y[i] - s[i] * y[i + 1]) / (s[i + level] - s[i]);
  return y[0];
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::EuclidF: return "example-E-f";
    case ProfileKind::SphereU: return "example-S-u";
    case ProfileKind::SphereV: return "example-S-v";
  }
  return "unknown";
}

RevolutionProfile RevolutionProfile::euclid_f() { return {ProfileKind::EuclidF, 0.0}; }

RevolutionProfile RevolutionProfile::sphere_u(double a) {
  check_a(a);
  return {ProfileKind::SphereU, a};
}

RevolutionProfile RevolutionProfile::sphere_v(double a) {
  check_a(a);
  return {ProfileKind::SphereV, a};
}

double RevolutionProfile::lower() const { return kind == ProfileKind::SphereU ? a : 0.0; }
double RevolutionProfile::upper() const { return 1.0; }

ProfileJet profile_jet(const RevolutionProfile& profile, double s) {
  if (!(s >= profile.lower() && s <= profile.upper()))
    throw Error(ErrorKind::OutOfDomain,
                fmt::format("{} is defined on [{}, {}], got {}", to_string(profile.kind), profile.lower(),
                            profile.upper(), s));
  switch (profile.kind) {
    case ProfileKind::EuclidF: return jet_f(s);
    case ProfileKind::SphereU: return jet_u(profile.a, s);
    case ProfileKind::SphereV: return jet_v(profile.a, s);
  }
  return {};
}

double cap_curvature(double a) {
  check_a(a);
  return -(1.0 - a) / 4.0;
}

double cap_scalar_curvature(double a) {
  const double k = cap_curvature(a);
  return 2.0 + 2.0 * k * k;
}

PrincipalPair principal_curvatures_u(double a, double r) {
  check_a(a);
  if (!(r >= a && r < 1.0)) throw Error(ErrorKind::OutOfDomain, fmt::format("need a <= r < 1, got r = {}", r));
  const ProfileJet j = jet_u(a, r);
  const double u = j.value, du = j.first, ddu = j.second;
  const double w2 = 1.0 + du * du;
  const double w = std::sqrt(w2);
  PrincipalPair p;
  const double phi = (1.0 + u * u + r * r) / 2.0;
  p.lambda1 = (u - r * du + phi * ddu / w2) / w;
  p.lambda2 = (u - r * du + phi * du / r) / w;
  p.scalar = 2.0 + 2.0 * p.lambda1 * p.lambda2;
  return p;
}

std::vector<double> profile_grid(double a, int count) {
  check_a(a);
  if (count < 1) throw Error(ErrorKind::ParameterOutOfRange, "grid needs at least one point");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g.push_back(a + i * (1.0 - a) / count);
  return g;
}

MonotonicityReport monotonicity_checks(double a, const std::vector<double>& grid) {
  check_a(a);
  MonotonicityReport rep;
  rep.a = a;
  rep.samples = static_cast<long>(grid.size());
  const ProfileJet at_a = jet_u(a, a);
  rep.value_at_a = std::abs(at_a.value);
  rep.slope_at_a = std::abs(at_a.first);
  rep.value_zero = rep.value_at_a <= 1e-14;
  rep.slope_zero = rep.slope_at_a <= 1e-14;
  rep.second_order_margin_at_a = at_a.second - at_a.first * (1.0 + at_a.first * at_a.first);

  rep.min_slope = kInf;
  rep.min_second_order_margin = kInf;
  rep.min_lambda1 = kInf;
  for (double r : grid) {
    if (!(r >= a && r < 1.0))
      throw Error(ErrorKind::ParameterOutOfRange, fmt::format("grid point {} outside [a, 1)", r));
    const ProfileJet j = jet_u(a, r);
    if (r > a) rep.min_slope = std::min(rep.min_slope, j.first);
    const double margin = j.second - j.first * (1.0 + j.first * j.first);
    rep.min_second_order_margin = std::min(rep.min_second_order_margin, margin);
    if (margin > 0.0) rep.min_lambda1 = std::min(rep.min_lambda1, principal_curvatures_u(a, r).lambda1);
  }
  rep.slope_positive = rep.min_slope > 0.0;
  rep.second_order = rep.min_second_order_margin > 0.0;
  rep.lambda1_positive = rep.min_lambda1 > 0.0;
  return rep;
}

std::vector<double> junction_radii(int k_min, int k_max) {
  std::vector<double> r;
  for (int k = k_min; k <= k_max; ++k) r.push_back(1.0 - std::pow(10.0, -k));
  return r;
}

JunctionReport junction_c2_check(double a, const std::vector<double>& radii, double tolerance) {
  check_a(a);
  if (radii.size() < 2) throw Error(ErrorKind::ParameterOutOfRange, "junction check needs at least two radii");
  JunctionReport rep;
  rep.a = a;
  rep.radii = radii;
  rep.tolerance = tolerance;
  std::vector<double> s;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    if (!(r > a && r < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, fmt::format("radius {} outside (a, 1)", r));
    if (k > 0 && !(r > radii[k - 1])) throw Error(ErrorKind::ParameterOutOfRange, "radii must increase");
    const auto p = principal_curvatures_u(a, r);
    rep.values.push_back(jet_u(a, r).value);
    rep.lambda1.push_back(p.lambda1);
    rep.lambda2.push_back(p.lambda2);
    s.push_back(std::sqrt(1.0 - r));
  }
  rep.value_limit = extrapolate_to_zero(s, rep.values);
  rep.lambda1_limit = extrapolate_to_zero(s, rep.lambda1);
  rep.lambda2_limit = extrapolate_to_zero(s, rep.lambda2);
  rep.cap_value = jet_v(a, 1.0).value;
  rep.cap_curvature = cap_curvature(a);
  rep.value_error = std::abs(rep.value_limit - rep.cap_value);
  rep.lambda1_error = std::abs(rep.sign_map * rep.lambda1_limit - rep.cap_curvature);
  rep.lambda2_error = std::abs(rep.sign_map * rep.lambda2_limit - rep.cap_curvature);
  rep.pass = rep.value_error <= tolerance && rep.lambda1_error <= tolerance && rep.lambda2_error <= tolerance;
  return rep;
}

double gauss_curvature_f(double z) {
  if (!(z > 0.0 && z < 1.0)) throw Error(ErrorKind::OutOfDomain, fmt::format("need 0 < z < 1, got {}", z));
  const ProfileJet j = jet_f(z);
  const double s = 1.0 + j.first * j.first;
  return -j.second / (j.value * s * s);
}

namespace {

class RotationGraphField final : public ScalarField {
 public:
  RotationGraphField() : ScalarField(Domain::box(VectorXd::Constant(2, -2.0), (VectorXd(2) << 2.0, 1.0).finished())) {
  }
  std::optional<int> dimension() const override { return 2; }
  std::string describe() const override { return "rotation-f"; }

 protected:
  Jet compute_jet(const VectorXd& x) const override {
    const double y = x[0], z = x[1];
    if (!(z > 0.0 && z < 1.0)) throw Error(ErrorKind::OutOfDomain, fmt::format("rotation-f needs 0 < z < 1"));
    const ProfileJet f = jet_f(z);
    const double w2 = f.value * f.value - y * y;
    if (!(w2 > 0.0)) throw Error(ErrorKind::OutOfDomain, "rotation-f needs |y| < f(z)");
    const double w = std::sqrt(w2);
    const double ff = f.value * f.first;
    Jet j;
    j.value = w;
    j.gradient = VectorXd(2);
    j.gradient << -y / w, ff / w;
    j.hessian = MatrixXd(2, 2);
    j.hessian(0, 0) = -1.0 / w - y * y / (w * w2);
    j.hessian(0, 1) = j.hessian(1, 0) = y * ff / (w * w2);
    j.hessian(1, 1) = (f.first * f.first + f.value * f.second) / w - ff * ff / (w * w2);
    return j;
  }
};

}  // namespace

FieldPtr revolution_field(const RevolutionProfile& profile) {
  switch (profile.kind) {
    case ProfileKind::SphereU: {
      const double a = profile.a;
      return std::make_shared<RadialField>([a](double r) { return jet_u(a, r); }, Domain::annulus(a, 1.0),
                                           fmt::format("radial:u:{}", a));
    }
    case ProfileKind::SphereV: {
      const double a = profile.a;
      return std::make_shared<RadialField>([a](double r) { return jet_v(a, r); }, Domain::ball(1.0),
                                           fmt::format("radial:v:{}", a));
    }
    case ProfileKind::EuclidF: return rotation_f_graph();
  }
  return nullptr;
}

FieldPtr rotation_f_graph() { return std::make_shared<RotationGraphField>(); }

std::vector<GluedRow> spherical_glued_sweep(double a, int count) {
  std::vector<GluedRow> rows;
  for (double r : profile_grid(a, count)) {
    const auto p = principal_curvatures_u(a, r);
    rows.push_back({0, r, jet_u(a, r).value, p.lambda1, p.lambda2, p.scalar});
  }
  const double k = cap_curvature(a);
  for (int i = 0; i <= count; ++i) {
    const double r = static_cast<double>(i) / count;
    rows.push_back({1, r, jet_v(a, r).value, k, k, cap_scalar_curvature(a)});
  }
  return rows;
}

std::vector<ConeRow> euclid_cone_sweep(int count, double lo, double hi) {
  if (count < 2) throw Error(ErrorKind::ParameterOutOfRange, "sweep needs at least two points");
  std::vector<ConeRow> rows;
  for (int i = 0; i < count; ++i) {
    const double z = lo + (hi - lo) * i / (count - 1);
    const double k = gauss_curvature_f(z);
    rows.push_back({z, jet_f(z).value, k, 2.0 * k});
  }
  return rows;
}

}  // namespace curvkit
