#include "curvkit/fields.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string_view to_string(JetMode mode) {
  switch (mode) {
    case JetMode::Analytic: return "analytic";
    case JetMode::FiniteDifference: return "finite-difference";
    case JetMode::Grid: return "grid";
  }
  return "?";
}

namespace {

void check_dimension(const ScalarField& f, const VectorXd& x) {
  if (const auto n = f.dimension(); n && *n != x.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{} expects dimension {}, got {}", f.describe(), *n, x.size()));
  }
  if (x.size() < 1) throw Error(ErrorKind::DimensionMismatch, "empty query point");
}

std::string point_string(const VectorXd& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += fmt::format("{}{}", i ? "," : "", x[i]);
  return s + ")";
}

}  // namespace

Jet ScalarField::eval_jet(const VectorXd& x) const {
  check_dimension(*this, x);
  if (!in_domain(x)) {
    throw Error(ErrorKind::OutOfDomain,
                fmt::format("{} at {} (domain {})", describe(), point_string(x), domain_.describe()));
  }
  Jet j = compute_jet(x);
  if (!std::isfinite(j.value) || !j.gradient.allFinite() || !j.hessian.allFinite()) {
    throw Error(ErrorKind::NonFinite, fmt::format("{} at {}", describe(), point_string(x)));
  }
  return j;
}

double ScalarField::eval_value(const VectorXd& x) const {
  check_dimension(*this, x);
  if (!in_domain(x)) {
    throw Error(ErrorKind::OutOfDomain,
                fmt::format("{} at {} (domain {})", describe(), point_string(x), domain_.describe()));
  }
  const double v = compute_value(x);
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonFinite, fmt::format("{} at {}", describe(), point_string(x)));
  }
  return v;
}

// ---------------------------------------------------------------------------

std::string ConstantField::describe() const { return fmt::format("const:{}", c_); }

Jet ConstantField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  return {c_, VectorXd::Zero(n), MatrixXd::Zero(n, n)};
}

PlaneField::PlaneField(VectorXd slope, double c0) : ScalarField(Domain::whole()), slope_(std::move(slope)), c0_(c0) {
  if (slope_.size() == 0) throw Error(ErrorKind::ParameterOutOfRange, "plane needs a slope vector");
}

std::string PlaneField::describe() const { return fmt::format("plane(dim={})", slope_.size()); }

Jet PlaneField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  return {c0_ + slope_.dot(x), slope_, MatrixXd::Zero(n, n)};
}

QuadraticCupField::QuadraticCupField(VectorXd weights, double c0)
    : ScalarField(Domain::whole()), weights_(std::move(weights)), c0_(c0) {}

std::optional<int> QuadraticCupField::dimension() const {
  if (weights_.size() == 0) return std::nullopt;
  return static_cast<int>(weights_.size());
}

std::string QuadraticCupField::describe() const {
  if (weights_.size() == 0) return "paraboloid";
  std::string s = "cup:";
  for (Eigen::Index i = 0; i < weights_.size(); ++i) s += fmt::format("{}{}", i ? "," : "", weights_[i]);
  return s;
}

Jet QuadraticCupField::compute_jet(const VectorXd& x) const {
  const VectorXd w = weights_.size() == 0 ? VectorXd::Ones(x.size()) : weights_;
  Jet j;
  j.value = c0_ + 0.5 * (w.array() * x.array().square()).sum();
  j.gradient = w.cwiseProduct(x);
  j.hessian = w.asDiagonal();
  return j;
}

SphereCapField::SphereCapField(double radius, double offset)
    : ScalarField(Domain::ball(radius > 0.0 ? radius : 1.0)), radius_(radius), offset_(offset) {
  if (!(radius > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "sphere radius must be positive");
}

std::string SphereCapField::describe() const { return fmt::format("sphere:{},{}", radius_, offset_); }

Jet SphereCapField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  const double s = std::sqrt(radius_ * radius_ - x.squaredNorm());
  Jet j;
  j.value = offset_ + s;
  j.gradient = -x / s;
  j.hessian = -MatrixXd::Identity(n, n) / s - x * x.transpose() / (s * s * s);
  return j;
}

PolynomialField::PolynomialField(std::vector<Monomial> terms)
    : ScalarField(Domain::whole()), terms_(std::move(terms)), dim_(0) {
  if (terms_.empty()) throw Error(ErrorKind::ParameterOutOfRange, "polynomial has no terms");
  dim_ = static_cast<int>(terms_.front().exponents.size());
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != dim_ || dim_ == 0) {
      throw Error(ErrorKind::DimensionMismatch, "monomials must share a positive dimension");
    }
    for (int e : t.exponents) {
      if (e < 0) throw Error(ErrorKind::ParameterOutOfRange, "negative exponent");
    }
  }
}

std::string PolynomialField::describe() const {
  return fmt::format("poly(dim={},terms={})", dim_, terms_.size());
}

namespace {

// d^k/dx^k of x^e.
double power_derivative(double x, int e, int k) {
  if (k > e) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= e - i;
  return c * std::pow(x, e - k);
}

}  // namespace

Jet PolynomialField::compute_jet(const VectorXd& x) const {
  const int n = dim_;
  Jet j{0.0, VectorXd::Zero(n), MatrixXd::Zero(n, n)};
  for (const auto& t : terms_) {
    // order[i][k] = k-th derivative of the i-th factor.
    std::vector<std::array<double, 3>> d(n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < 3; ++k) d[i][k] = power_derivative(x[i], t.exponents[i], k);
    }
    auto product = [&](int skip1, int k1, int skip2, int k2) {
      double p = t.coefficient;
      for (int i = 0; i < n; ++i) {
        int k = 0;
        if (i == skip1) k += k1;
        if (i == skip2) k += k2;
        p *= d[i][k];
      }
      return p;
    };
    j.value += product(-1, 0, -1, 0);
    for (int a = 0; a < n; ++a) {
      j.gradient[a] += product(a, 1, -1, 0);
      for (int b = 0; b < n; ++b) j.hessian(a, b) += product(a, 1, b, 1);
    }
  }
  return j;
}

RadialField::RadialField(ProfileFn profile, Domain domain, std::string name)
    : ScalarField(std::move(domain)), profile_(std::move(profile)), name_(std::move(name)) {}

Jet RadialField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  const double r = x.norm();
  const ProfileJet p = profile_(r);
  if (p.singular) {
    throw Error(ErrorKind::NonFinite, fmt::format("{} has a vertical tangent at r = {}", name_, r));
  }
  Jet j;
  j.value = p.value;
  if (r < 1e-12) {
    // Smooth even profiles only: p'(0) = 0 and the Hessian is p''(0) I.
    j.gradient = VectorXd::Zero(n);
    j.hessian = p.second * MatrixXd::Identity(n, n);
    return j;
  }
  const VectorXd e = x / r;
  const MatrixXd radial = e * e.transpose();
  j.gradient = p.first * e;
  j.hessian = p.second * radial + (p.first / r) * (MatrixXd::Identity(n, n) - radial);
  return j;
}

BumpField::BumpField(double c, double a, double beta)
    : ScalarField(Domain::annulus(a, 1.0)), c_(c), a_(a), beta_(beta) {
  if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "bump needs 0 < a < 1");
  if (std::abs(beta) >= 1.0) throw Error(ErrorKind::ParameterOutOfRange, "bump needs |beta| < 1");
}

std::string BumpField::describe() const { return fmt::format("bump:{},{},{}", c_, a_, beta_); }

Jet BumpField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  const double r = x.norm();
  const VectorXd e = x / r;
  const MatrixXd id = MatrixXd::Identity(n, n);
  const MatrixXd radial = e * e.transpose();

  const double q = (r - a_) * (1.0 - r);
  const double dq = 1.0 + a_ - 2.0 * r;
  const double p = q * q;
  const double dp = 2.0 * q * dq;
  const double d2p = 2.0 * dq * dq - 4.0 * q;
  const VectorXd grad_p = dp * e;
  const MatrixXd hess_p = d2p * radial + (dp / r) * (id - radial);

  VectorXd e1 = VectorXd::Zero(n);
  e1[0] = 1.0;
  const double r3 = r * r * r;
  const double g = 1.0 + beta_ * x[0] / r;
  const VectorXd grad_g = beta_ * (e1 / r - x[0] * x / r3);
  const MatrixXd hess_g =
      beta_ * (-(e1 * x.transpose() + x * e1.transpose()) / r3 - x[0] * id / r3 +
               3.0 * x[0] * x * x.transpose() / (r3 * r * r));

  Jet j;
  j.value = c_ * p * g;
  j.gradient = c_ * (g * grad_p + p * grad_g);
  j.hessian = c_ * (g * hess_p + grad_p * grad_g.transpose() + grad_g * grad_p.transpose() + p * hess_g);
  return j;
}

RandomAnalyticField::RandomAnalyticField(std::uint64_t seed, int n)
    : ScalarField(Domain::whole()), seed_(seed), n_(n) {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "random field dimension must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  MatrixXd gauss(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) gauss(i, k) = uniform(-1.0, 1.0);
  }
  const MatrixXd rot = Eigen::HouseholderQR<MatrixXd>(gauss).householderQ();
  VectorXd eig(n);
  for (int i = 0; i < n; ++i) eig[i] = uniform(0.5, 2.0);
  quadratic_ = rot * eig.asDiagonal() * rot.transpose();

  linear_.resize(n);
  for (int i = 0; i < n; ++i) linear_[i] = uniform(-0.2, 0.2);

  waves_.resize(3);
  for (auto& w : waves_) {
    w.amplitude = uniform(-0.1, 0.1);
    w.frequency.resize(n);
    for (int i = 0; i < n; ++i) w.frequency[i] = uniform(-1.5, 1.5);
    w.phase = uniform(0.0, 2.0 * std::numbers::pi);
  }
}

std::string RandomAnalyticField::describe() const { return fmt::format("random:{},{}", seed_, n_); }

Jet RandomAnalyticField::compute_jet(const VectorXd& x) const {
  Jet j;
  j.value = 0.5 * x.dot(quadratic_ * x) + linear_.dot(x);
  j.gradient = quadratic_ * x + linear_;
  j.hessian = quadratic_;
  for (const auto& w : waves_) {
    const double arg = w.frequency.dot(x) + w.phase;
    j.value += w.amplitude * std::sin(arg);
    j.gradient += w.amplitude * std::cos(arg) * w.frequency;
    j.hessian -= w.amplitude * std::sin(arg) * w.frequency * w.frequency.transpose();
  }
  return j;
}

ScaledField::ScaledField(double factor, FieldPtr inner)
    : ScalarField(inner->domain()), factor_(factor), inner_(std::move(inner)) {}

std::string ScaledField::describe() const { return fmt::format("scale:{}:{}", factor_, inner_->describe()); }

Jet ScaledField::compute_jet(const VectorXd& x) const {
  Jet j = inner_->eval_jet(x);
  j.value *= factor_;
  j.gradient *= factor_;
  j.hessian *= factor_;
  return j;
}

double ScaledField::compute_value(const VectorXd& x) const { return factor_ * inner_->eval_value(x); }

// ---------------------------------------------------------------------------

FiniteDifferenceField::FiniteDifferenceField(FieldPtr inner, std::optional<double> step)
    : ScalarField(inner->domain()), inner_(std::move(inner)), step_(step) {
  if (step_ && !(*step_ > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "FD step must be positive");
}

std::string FiniteDifferenceField::describe() const {
  return step_ ? fmt::format("fd:{}:{}", *step_, inner_->describe()) : fmt::format("fd:{}", inner_->describe());
}

double FiniteDifferenceField::gradient_step(const VectorXd& x) const {
  if (step_) return *step_;
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, x.norm());
}

double FiniteDifferenceField::hessian_step(const VectorXd& x) const {
  if (step_) return *step_;
  return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * std::max(1.0, x.norm());
}

double FiniteDifferenceField::boundary_band(const VectorXd& x) const {
  return 2.0 * std::max(gradient_step(x), hessian_step(x)) + inner_->boundary_band(x);
}

std::optional<double> FiniteDifferenceField::difference_step(const VectorXd& x) const {
  return hessian_step(x);
}

double FiniteDifferenceField::compute_value(const VectorXd& x) const { return inner_->eval_value(x); }

Jet FiniteDifferenceField::compute_jet(const VectorXd& x) const {
  const auto n = x.size();
  const double h1 = gradient_step(x);
  const double h2 = hessian_step(x);
  auto f = [&](const VectorXd& p) { return inner_->eval_value(p); };

  Jet j;
  j.value = f(x);
  j.gradient.resize(n);
  j.hessian.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorXd p = x, m = x;
    p[i] += h1;
    m[i] -= h1;
    j.gradient[i] = (f(p) - f(m)) / (2.0 * h1);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    VectorXd p = x, m = x;
    p[i] += h2;
    m[i] -= h2;
    j.hessian(i, i) = (f(p) - 2.0 * j.value + f(m)) / (h2 * h2);
    for (Eigen::Index k = i + 1; k < n; ++k) {
      VectorXd pp = x, pm = x, mp = x, mm = x;
      pp[i] += h2; pp[k] += h2;
      pm[i] += h2; pm[k] -= h2;
      mp[i] -= h2; mp[k] += h2;
      mm[i] -= h2; mm[k] -= h2;
      const double v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h2 * h2);
      j.hessian(i, k) = v;
      j.hessian(k, i) = v;
    }
  }
  return j;
}

}  // namespace curvkit
