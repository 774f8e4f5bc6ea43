#include "curvkit/barrier.hpp"

#include "curvkit/error.hpp"
#include "curvkit/sampling.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double barrier_value(double lambda, const VectorXd& x) { return lambda * (1.0 - x.norm()); }

std::string_view to_string(SlideOutcome outcome) {
  switch (outcome) {
    case SlideOutcome::Touch: return "touch";
    case SlideOutcome::BoundaryTouch: return "boundary-touch";
    case SlideOutcome::Degenerate: return "degenerate";
  }
  return "unknown";
}

namespace {

struct Sample {
  VectorXd x;
  double r = 0.0;
  double u = 0.0;
  int ring = 0;
};

std::vector<VectorXd> sample_directions(int n, const BarrierSampling& s) {
  if (n != 2) return low_discrepancy_directions(n, s.angular, s.seed);
  std::vector<VectorXd> dirs;
  for (int j = 0; j < s.angular; ++j) {
    const double t = 2.0 * std::numbers::pi * (j + 0.5) / s.angular;
    VectorXd d(2);
    d << std::cos(t), std::sin(t);
    dirs.push_back(std::move(d));
  }
  return dirs;
}

// Stationary point of q = u / (1 - |x|): F = Du (1 - r) + u x / r = 0.
int refine_touch(const ScalarField& field, double a_prime, VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const auto q = [&](const VectorXd& y) { return field.eval_value(y) / (1.0 - y.norm()); };
  int steps = 0;
  for (; steps < 50; ++steps) {
    const Jet j = field.eval_jet(x);
    const double r = x.norm();
    const VectorXd xh = x / r;
    const VectorXd f = j.gradient * (1.0 - r) + j.value * xh;
    if (f.norm() <= 1e-15 * std::max(1.0, j.gradient.norm())) break;
    const MatrixXd jac = j.hessian * (1.0 - r) - j.gradient * xh.transpose() + xh * j.gradient.transpose() +
                         j.value / r * (MatrixXd::Identity(n, n) - xh * xh.transpose());
    const VectorXd step = jac.fullPivLu().solve(-f);
    VectorXd next = x + step;
    const double rn = next.norm();
    if (!step.allFinite() || rn <= a_prime || rn >= 1.0 || !field.in_domain(next)) break;
    if (q(next) < q(x) - 1e-12 * std::abs(q(x))) break;
    const bool done = step.norm() <= 1e-15 * std::max(1.0, x.norm());
    x = next;
    if (done) break;
  }
  return steps;
}

}  // namespace

BarrierRun slide(const ScalarField& field, int n, double a, double a_prime, double lambda_max,
                 const BarrierOptions& options) {
  if (n < 2) throw Error(ErrorKind::DimensionMismatch, "barrier runs need n >= 2");
  if (!(0.0 <= a && a < a_prime && a_prime < 1.0))
    throw Error(ErrorKind::PreconditionViolated, fmt::format("need 0 <= a < a' < 1, got a={} a'={}", a, a_prime));
  if (!(lambda_max >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "lambda_max must be nonnegative");
  const auto& s = options.sampling;
  if (s.radial < 3 || s.angular < 1) throw Error(ErrorKind::ParameterOutOfRange, "too few barrier samples");

  std::vector<Sample> samples;
  const auto dirs = sample_directions(n, s);
  for (int i = 0; i < s.radial; ++i) {
    const double r = a_prime + (i + 0.5) * (1.0 - a_prime) / s.radial;
    for (const auto& d : dirs) {
      VectorXd x = r * d;
      if (!field.in_domain(x)) continue;
      const double u = field.eval_value(x);
      samples.push_back({std::move(x), r, u, i});
    }
  }
  if (samples.empty()) throw Error(ErrorKind::EmptyDomain, "no barrier sample lies in the field domain");

  BarrierRun run;
  run.field = field.describe();
  run.n = n;
  run.a = a;
  run.a_prime = a_prime;
  run.lambda_max = lambda_max;
  run.samples = static_cast<long>(samples.size());
  run.bisection_tolerance = options.bisection_tolerance;
  run.touch_tolerance = options.touch_tolerance;

  double umax = -std::numeric_limits<double>::infinity();
  for (const auto& p : samples) umax = std::max(umax, p.u);
  if (umax < -options.touch_tolerance) throw Error(ErrorKind::NoTouch, "u < 0 on every barrier sample");

  const auto excess = [&](double lambda, std::size_t* arg) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const double e = samples[k].u - lambda * (1.0 - samples[k].r);
      if (e > best) {
        best = e;
        if (arg) *arg = k;
      }
    }
    return best;
  };

  if (umax <= options.touch_tolerance) {
    std::size_t k = 0;
    excess(0.0, &k);
    run.outcome = SlideOutcome::Degenerate;
    run.x0 = samples[k].x;
    run.max_excess = excess(0.0, nullptr);
  } else {
    if (excess(lambda_max, nullptr) > options.touch_tolerance)
      throw Error(ErrorKind::PreconditionViolated,
                  fmt::format("psi_lambda_max with lambda_max={} does not dominate u on the samples", lambda_max));
    double lo = 0.0, hi = lambda_max;
    while (hi - lo > options.bisection_tolerance) {
      const double mid = 0.5 * (lo + hi);
      (excess(mid, nullptr) <= 0.0 ? hi : lo) = mid;
      ++run.bisection_steps;
    }
    std::size_t k = 0;
    run.lambda_sampled = hi;
    run.max_excess = excess(hi, &k);
    run.x0 = samples[k].x;
    const bool on_edge = samples[k].ring == 0 || samples[k].ring == s.radial - 1;
    run.outcome = on_edge ? SlideOutcome::BoundaryTouch : SlideOutcome::Touch;
    if (run.outcome == SlideOutcome::Touch && options.refine) run.newton_steps = refine_touch(field, a_prime, run.x0);
  }

  const Jet j = field.eval_jet(run.x0);
  const double r0 = run.x0.norm();
  run.u0 = j.value;
  run.grad_norm = j.gradient.norm();
  run.radial_derivative = j.gradient.dot(run.x0) / r0;
  run.lambda_star = run.outcome == SlideOutcome::Degenerate ? 0.0 : std::max(0.0, j.value / (1.0 - r0));
  return run;
}

double ring_mean_curvature(double radius, double level, int n) {
  if (!(radius > 0.0 && radius <= 1.0))
    throw Error(ErrorKind::ParameterOutOfRange, fmt::format("ring radius {} outside (0, 1]", radius));
  if (n < 2) throw Error(ErrorKind::DimensionMismatch, "ring curvature needs n >= 2");
  return (n - 1.0) / radius * (1.0 + level * level - radius * radius) / 2.0;
}

ComparisonBounds comparison_bounds(double radius, double level, std::optional<double> grad_norm, int n, double margin,
                                   double regularity) {
  ComparisonBounds b;
  b.upper_cap = (n - 1.0) * (1.0 - radius);
  if (grad_norm) {
    if (*grad_norm < regularity)
      throw Error(ErrorKind::NonRegularPoint, fmt::format("|Du| = {} at the touching point", *grad_norm));
    b.upper = (n - 1.0) * level / *grad_norm;
  } else {
    b.upper = b.upper_cap;
  }
  b.lower = ring_mean_curvature(radius, level, n);
  b.ordering_checked = 1.0 - radius > margin;
  b.ordering_holds = !b.ordering_checked || (b.lower > b.upper && b.lower > b.upper_cap);
  return b;
}

ComparisonBounds comparison_bounds(const BarrierRun& run, double margin, double regularity) {
  return comparison_bounds(run.x0.norm(), run.u0, run.grad_norm, run.n, margin, regularity);
}

}  // namespace curvkit
