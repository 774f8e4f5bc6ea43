#pragma once

// Ambient geometry phi^-2 (g + dt^2) on N x R.

#include "curvkit/metric.hpp"

#include <memory>
#include <string>

namespace curvkit {

struct FactorJet {
  double value = 1.0;
  /// Spatial partials d phi / d x^i.
  Eigen::VectorXd spatial_gradient;
  /// d phi / dt.
  double dt = 0.0;
};

class ConformalFactor {
 public:
  virtual ~ConformalFactor() = default;
  /// Throws ParameterOutOfRange when phi <= 0 at (x, t).
  FactorJet eval(const Eigen::VectorXd& x, double t) const;
  virtual bool is_spherical() const { return false; }
  virtual bool is_constant() const { return false; }
  virtual std::string describe() const = 0;

 protected:
  virtual FactorJet compute(const Eigen::VectorXd& x, double t) const = 0;
};

using FactorPtr = std::shared_ptr<const ConformalFactor>;

/// phi = (1 + |x|^2 + t^2) / 2 on R^{n+1}: the round unit sphere.
class SphericalFactor final : public ConformalFactor {
 public:
  bool is_spherical() const override { return true; }
  std::string describe() const override { return "spherical"; }

 protected:
  FactorJet compute(const Eigen::VectorXd& x, double t) const override;
};

class ConstantFactor final : public ConformalFactor {
 public:
  explicit ConstantFactor(double c);
  bool is_constant() const override { return true; }
  std::string describe() const override;

 protected:
  FactorJet compute(const Eigen::VectorXd& x, double t) const override;

 private:
  double c_;
};

/// phi = exp(k t).
class ExpTimeFactor final : public ConformalFactor {
 public:
  explicit ExpTimeFactor(double k) : k_(k) {}
  std::string describe() const override;

 protected:
  FactorJet compute(const Eigen::VectorXd& x, double t) const override;

 private:
  double k_;
};

struct AmbientSpec {
  MetricPtr base;
  /// Null for the plain product metric g + dt^2.
  FactorPtr factor;

  bool is_product() const { return factor == nullptr; }
  /// Flat base with the spherical factor.
  bool is_round_sphere() const { return factor && factor->is_spherical() && base && base->is_flat(); }
  std::string describe() const;
};

AmbientSpec flat_product_ambient();
AmbientSpec spherical_ambient();

}  // namespace curvkit
