#include "curvkit/suites.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace curvkit {

using Eigen::VectorXd;

std::vector<FieldDraw> draw_fields(int count, int n_min, int n_max, std::uint64_t seed) {
  if (count < 0 || n_min < 2 || n_max < n_min) throw Error(ErrorKind::ParameterOutOfRange, "bad field draw request");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(n_min, n_max);
  std::uniform_real_distribution<double> lift(0.1, 0.5);
  std::vector<FieldDraw> out;
  for (int k = 0; k < count; ++k) {
    FieldDraw d;
    d.index = k;
    d.seed = rng();
    d.n = dim(rng);
    const RandomAnalyticField f(d.seed, d.n);
    d.level = f.eval_value(VectorXd::Zero(d.n)) + lift(rng);
    out.push_back(d);
  }
  return out;
}

namespace {

std::vector<VectorXd> slice_points(const ScalarField& field, const FieldDraw& d, const SuiteConfig& c) {
  RaySampling s;
  s.center = VectorXd::Zero(d.n);
  s.rays = c.points;
  s.seed = d.seed ^ 0x9e3779b97f4a7c15ULL;
  return sample_level_set(field, d.level, s);
}

void record(ResidualSuiteResult& r, PointResidual p) {
  ++r.evaluated;
  if (!r.worst || p.residual > r.max_residual) {
    r.max_residual = std::max(r.max_residual, p.residual);
    r.worst = p;
  }
  r.points.push_back(std::move(p));
}

}  // namespace

ResidualSuiteResult run_minor_suite(const SuiteConfig& config, const BaseMetric& base, std::optional<double> fd_step) {
  ResidualSuiteResult result;
  for (const auto& d : draw_fields(config.fields, config.n_min, config.n_max, config.seed)) {
    FieldPtr field = std::make_shared<RandomAnalyticField>(d.seed, d.n);
    const auto points = slice_points(*field, d, config);
    if (fd_step) field = std::make_shared<FiniteDifferenceField>(field, *fd_step);
    for (const auto& x : points) {
      try {
        const SliceFrame frame = regular_slice(*field, base, d.level, x, config.slice);
        const ExtrinsicPoint p = extrinsic_point(*field, base, x);
        record(result, {d.index, x, d.level, minor_relation_residual(frame, p)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonRegularPoint) throw;
        ++result.skipped;
      }
    }
  }
  return result;
}

ConvergenceResult minor_fd_convergence(const FieldPtr& field, const BaseMetric& base, double level, const VectorXd& x,
                                       double h, int halvings) {
  ConvergenceResult c;
  for (int k = 0; k <= halvings; ++k) {
    const double step = h / std::pow(2.0, k);
    const FiniteDifferenceField fd(field, step);
    const SliceFrame frame = regular_slice(fd, base, level, x);
    const ExtrinsicPoint p = extrinsic_point(fd, base, x);
    c.steps.push_back(step);
    c.residuals.push_back(minor_relation_residual(frame, p));
    if (k > 0) c.orders.push_back(std::log2(c.residuals[k - 1] / c.residuals[k]));
  }
  return c;
}

ResidualSuiteResult run_gauss_suite(const SuiteConfig& config, const BaseMetric& base) {
  ResidualSuiteResult result;
  for (const auto& d : draw_fields(config.fields, config.n_min, config.n_max, config.seed)) {
    const RandomAnalyticField field(d.seed, d.n);
    for (const auto& p : low_discrepancy_points(d.n, config.points, d.seed)) {
      const VectorXd x = (2.0 * p.array() - 1.0).matrix() * (0.6 / std::sqrt(static_cast<double>(d.n)));
      const double extrinsic = extrinsic_point(field, base, x).scalar_curvature;
      const double intrinsic = intrinsic_scalar_curvature(field, base, x);
      record(result, {d.index, x, 0.0, std::abs(extrinsic - intrinsic)});
    }
  }
  return result;
}

GreatSphereResult run_great_sphere_suite(int points, int n, std::uint64_t seed) {
  GreatSphereResult r;
  const AmbientSpec ambient = spherical_ambient();
  const ConstantField zero(0.0);
  const SphereCapField hemisphere(1.0);
  for (const auto& p : low_discrepancy_points(n, points, seed)) {
    const VectorXd x = (2.0 * p.array() - 1.0).matrix() * (0.9 / std::sqrt(static_cast<double>(n)));
    for (const ScalarField* f : {static_cast<const ScalarField*>(&zero), static_cast<const ScalarField*>(&hemisphere)}) {
      const double direct = H_spherical(*f, x);
      const double route = conformal_point(*f, ambient, x).mean;
      r.max_abs_mean = std::max(r.max_abs_mean, std::abs(direct));
      r.max_route_difference = std::max(r.max_route_difference, std::abs(direct - route));
      ++r.points;
    }
  }
  return r;
}

ResidualSuiteResult run_spherical_route_suite(const SuiteConfig& config) {
  ResidualSuiteResult result;
  const AmbientSpec ambient = spherical_ambient();
  for (const auto& d : draw_fields(config.fields, config.n_min, config.n_max, config.seed)) {
    const RandomAnalyticField field(d.seed, d.n);
    for (const auto& p : low_discrepancy_points(d.n, config.points, d.seed)) {
      const VectorXd x = (2.0 * p.array() - 1.0).matrix() * (0.9 / std::sqrt(static_cast<double>(d.n)));
      const double direct = H_spherical(field, x);
      const double route = conformal_point(field, ambient, x).mean;
      record(result, {d.index, x, 0.0, std::abs(direct - route) / std::max(1.0, std::abs(direct))});
    }
  }
  return result;
}

InequalitySuiteResult run_inequality_suite(InequalityKind which, const SuiteConfig& config, const AmbientSpec& ambient,
                                           double tolerance) {
  InequalitySuiteResult result;
  result.which = which;
  result.tolerance = tolerance;
  result.min_gap = std::numeric_limits<double>::infinity();
  const MetricPtr base = ambient.base ? ambient.base : flat_metric();
  for (const auto& d : draw_fields(config.fields, config.n_min, config.n_max, config.seed)) {
    const RandomAnalyticField field(d.seed, d.n);
    for (const auto& x : slice_points(field, d, config)) {
      InequalityReport rep;
      try {
        switch (which) {
          case InequalityKind::Prod: rep = check_prod(field, *base, d.level, x, config.slice); break;
          case InequalityKind::Phi: rep = check_phi(field, ambient, d.level, x, config.slice); break;
          case InequalityKind::Euclid: rep = check_euclid(field, d.level, x, config.slice); break;
          case InequalityKind::Sphere: rep = check_sphere(field, d.level, x, config.slice); break;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NonRegularPoint) throw;
        ++result.skipped;
        continue;
      }
      ++result.evaluated;
      result.min_gap = std::min(result.min_gap, rep.gap);
      if (rep.gap < -tolerance) ++result.violations;
      result.max_decomposition_mismatch = std::max(
          result.max_decomposition_mismatch, std::abs(rep.gap - rep.decomposition_gap) / std::max(1.0, std::abs(rep.lhs)));
      result.reports.emplace_back(d.index, std::move(rep));
    }
  }
  if (result.evaluated == 0) result.min_gap = 0.0;
  return result;
}

}  // namespace curvkit
