#pragma once

// Height functions u : Omega subset R^n -> R with value/gradient/Hessian access.

#include "curvkit/domain.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvkit {

struct Jet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

enum class JetMode { Analytic, FiniteDifference, Grid };

std::string_view to_string(JetMode mode);

class ScalarField {
 public:
  virtual ~ScalarField() = default;

  /// Value, coordinate gradient and coordinate Hessian at x. Throws
  /// OutOfDomain outside the domain (or inside the finite-difference band)
  /// and NonFinite when any component is not finite.
  Jet eval_jet(const Eigen::VectorXd& x) const;
  double eval_value(const Eigen::VectorXd& x) const;

  const Domain& domain() const { return domain_; }
  bool in_domain(const Eigen::VectorXd& x) const { return domain_.contains(x, boundary_band(x)); }

  virtual JetMode mode() const { return JetMode::Analytic; }
  virtual std::optional<int> dimension() const { return domain_.dimension(); }
  virtual std::string describe() const = 0;

  /// Width of the boundary band excluded from queries at x.
  virtual double boundary_band(const Eigen::VectorXd& /*x*/) const { return 0.0; }

  /// Step used when downstream code must difference first derivatives of
  /// this field (finite-difference mode only).
  virtual std::optional<double> difference_step(const Eigen::VectorXd& /*x*/) const {
    return std::nullopt;
  }

 protected:
  explicit ScalarField(Domain domain) : domain_(std::move(domain)) {}

  virtual Jet compute_jet(const Eigen::VectorXd& x) const = 0;
  virtual double compute_value(const Eigen::VectorXd& x) const { return compute_jet(x).value; }

 private:
  Domain domain_;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

/// u = c.
class ConstantField final : public ScalarField {
 public:
  explicit ConstantField(double c) : ScalarField(Domain::whole()), c_(c) {}
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  double c_;
};

/// u = c0 + slope . x
class PlaneField final : public ScalarField {
 public:
  PlaneField(Eigen::VectorXd slope, double c0 = 0.0);
  std::optional<int> dimension() const override { return static_cast<int>(slope_.size()); }
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  Eigen::VectorXd slope_;
  double c0_;
};

/// u = c0 + sum_i w_i x_i^2 / 2. Empty weights mean all ones in any dimension
/// (the paraboloid).
class QuadraticCupField final : public ScalarField {
 public:
  explicit QuadraticCupField(Eigen::VectorXd weights = {}, double c0 = 0.0);
  std::optional<int> dimension() const override;
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  Eigen::VectorXd weights_;
  double c0_;
};

/// Upper cap of a Euclidean sphere: u = offset + sqrt(rho^2 - |x - center|^2).
class SphereCapField final : public ScalarField {
 public:
  explicit SphereCapField(double radius, double offset = 0.0);
  double radius() const { return radius_; }
  double offset() const { return offset_; }
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  double radius_;
  double offset_;
};

struct Monomial {
  double coefficient = 0.0;
  std::vector<int> exponents;
};

/// Finite sum of monomials in a fixed dimension.
class PolynomialField final : public ScalarField {
 public:
  explicit PolynomialField(std::vector<Monomial> terms);
  std::optional<int> dimension() const override { return dim_; }
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  std::vector<Monomial> terms_;
  int dim_;
};

/// One-variable jet of a profile curve s -> p(s).
struct ProfileJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
  /// Vertical tangent: the derivatives are infinite.
  bool singular = false;
};

using ProfileFn = std::function<ProfileJet(double)>;

/// u(x) = p(|x|).
class RadialField final : public ScalarField {
 public:
  RadialField(ProfileFn profile, Domain domain, std::string name);
  std::string describe() const override { return name_; }

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  ProfileFn profile_;
  std::string name_;
};

/// u = c (r - a)^2 (1 - r)^2 (1 + beta x_1 / r) on the annulus a < r < 1;
/// u and Du vanish on both boundary spheres.
class BumpField final : public ScalarField {
 public:
  BumpField(double c, double a, double beta = 0.0);
  std::string describe() const override;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  double c_, a_, beta_;
};

/// u = x^T Q x / 2 + b . x + sum_k alpha_k sin(omega_k . x + phase_k) with
/// coefficients drawn from a seeded generator.
class RandomAnalyticField final : public ScalarField {
 public:
  struct Wave {
    double amplitude = 0.0;
    Eigen::VectorXd frequency;
    double phase = 0.0;
  };

  RandomAnalyticField(std::uint64_t seed, int n);
  std::optional<int> dimension() const override { return n_; }
  std::string describe() const override;
  std::uint64_t seed() const { return seed_; }

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  std::uint64_t seed_;
  int n_;
  Eigen::MatrixXd quadratic_;
  Eigen::VectorXd linear_;
  std::vector<Wave> waves_;
};

/// c * inner.
class ScaledField final : public ScalarField {
 public:
  ScaledField(double factor, FieldPtr inner);
  JetMode mode() const override { return inner_->mode(); }
  std::optional<int> dimension() const override { return inner_->dimension(); }
  std::string describe() const override;
  double boundary_band(const Eigen::VectorXd& x) const override { return inner_->boundary_band(x); }
  std::optional<double> difference_step(const Eigen::VectorXd& x) const override {
    return inner_->difference_step(x);
  }

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;
  double compute_value(const Eigen::VectorXd& x) const override;

 private:
  double factor_;
  FieldPtr inner_;
};

/// Derivatives of `inner` by central differences of its values only.
/// Default steps: cbrt(eps) * max(1, |x|) for the gradient and
/// eps^(1/4) * max(1, |x|) for the Hessian; a fixed step overrides both.
class FiniteDifferenceField final : public ScalarField {
 public:
  explicit FiniteDifferenceField(FieldPtr inner, std::optional<double> step = std::nullopt);
  JetMode mode() const override { return JetMode::FiniteDifference; }
  std::optional<int> dimension() const override { return inner_->dimension(); }
  std::string describe() const override;
  double boundary_band(const Eigen::VectorXd& x) const override;
  std::optional<double> difference_step(const Eigen::VectorXd& x) const override;

  double gradient_step(const Eigen::VectorXd& x) const;
  double hessian_step(const Eigen::VectorXd& x) const;

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;
  double compute_value(const Eigen::VectorXd& x) const override;

 private:
  FieldPtr inner_;
  std::optional<double> step_;
};

}  // namespace curvkit
