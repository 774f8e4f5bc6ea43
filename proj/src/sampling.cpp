#include "curvkit/sampling.hpp"

#include "curvkit/error.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace curvkit {

using Eigen::VectorXd;

namespace {

// Positive root of x^(d+1) = x + 1.
double generalized_golden(int d) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1.0));
  return x;
}

}  // namespace

std::vector<VectorXd> low_discrepancy_points(int d, int count, std::uint64_t seed) {
  if (d < 1 || count < 0) throw Error(ErrorKind::ParameterOutOfRange, "bad low-discrepancy request");
  const double g = generalized_golden(d);
  VectorXd alpha(d);
  for (int k = 0; k < d; ++k) alpha[k] = std::pow(1.0 / g, k + 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VectorXd start(d);
  for (int k = 0; k < d; ++k) start[k] = unit(rng);

  std::vector<VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    VectorXd p(d);
    for (int k = 0; k < d; ++k) {
      const double v = start[k] + (i + 1) * alpha[k];
      p[k] = v - std::floor(v);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<VectorXd> low_discrepancy_directions(int n, int count, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "direction dimension must be positive");
  std::vector<VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  if (n == 1) {
    for (int i = 0; i < count; ++i) out.push_back(VectorXd::Constant(1, i % 2 ? -1.0 : 1.0));
    return out;
  }
  if (n == 2) {
    for (const auto& p : low_discrepancy_points(1, count, seed)) {
      const double a = 2.0 * std::numbers::pi * p[0];
      VectorXd v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(std::move(v));
    }
    return out;
  }
  const boost::math::normal_distribution<double> normal;
  for (const auto& p : low_discrepancy_points(n, count, seed)) {
    VectorXd v(n);
    for (int k = 0; k < n; ++k) {
      const double q = std::clamp(p[k], 1e-12, 1.0 - 1e-12);
      v[k] = boost::math::quantile(normal, q);
    }
    const double norm = v.norm();
    out.push_back(norm > 0.0 ? VectorXd(v / norm) : VectorXd(VectorXd::Unit(n, 0)));
  }
  return out;
}

std::vector<VectorXd> sample_level_set(const ScalarField& field, double level, const RaySampling& sampling) {
  const int n = field.dimension().value_or(static_cast<int>(sampling.center.size()));
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "cannot infer the sampling dimension");
  VectorXd center = sampling.center.size() == 0 ? VectorXd::Zero(n) : sampling.center;
  if (center.size() != n) throw Error(ErrorKind::DimensionMismatch, "sampling center dimension");

  std::vector<VectorXd> points;
  const double ds = sampling.max_distance / sampling.scan_steps;
  for (const auto& dir : low_discrepancy_directions(n, sampling.rays, sampling.seed)) {
    auto g = [&](double s) { return field.eval_value(center + s * dir) - level; };
    bool have_prev = false;
    double s_prev = 0.0, g_prev = 0.0;
    for (int k = 0; k <= sampling.scan_steps; ++k) {
      const double s = k * ds;
      if (!field.in_domain(center + s * dir)) {
        if (have_prev) break;
        continue;
      }
      const double gs = g(s);
      if (gs == 0.0) {
        points.push_back(center + s * dir);
        break;
      }
      if (have_prev && (gs > 0.0) != (g_prev > 0.0)) {
        boost::uintmax_t iters = 200;
        const auto tol = boost::math::tools::eps_tolerance<double>(52);
        const auto [lo, hi] = boost::math::tools::toms748_solve(g, s_prev, s, g_prev, gs, tol, iters);
        const double root = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
        points.push_back(center + root * dir);
        break;
      }
      have_prev = true;
      s_prev = s;
      g_prev = gs;
    }
  }
  return points;
}

}  // namespace curvkit
