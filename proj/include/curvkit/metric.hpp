#pragma once

// Riemannian metrics g on the base N (a coordinate patch of R^n) with their
// Christoffel symbols, Ricci tensor and scalar curvature.

#include "curvkit/fields.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvkit {

struct MetricJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  /// christoffel[k](i, j) = Gamma^k_ij.
  std::vector<Eigen::MatrixXd> christoffel;
  Eigen::MatrixXd ricci;
  double scalar = 0.0;

  /// Contraction Gamma^m_jk v_m, the correction in nabla_j nabla_k f = f_jk - Gamma^m_jk f_m.
  Eigen::MatrixXd contract_christoffel(const Eigen::VectorXd& covector) const;
};

using MetricComponents = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Finite-difference steps for metric components. Fourth-order central
/// stencils are used for both derivative orders.
struct MetricSteps {
  std::optional<double> first;
  std::optional<double> second;

  double first_at(const Eigen::VectorXd& x) const;
  double second_at(const Eigen::VectorXd& x) const;
  /// Furthest distance from x touched by the stencils.
  double reach(const Eigen::VectorXd& x) const { return 2.0 * std::max(first_at(x), second_at(x)); }
};

/// Curvature of the metric x -> components(x) by the coordinate formulas,
/// with first and second component derivatives from fourth-order stencils.
/// Throws NotPositiveDefinite when components(x) is not positive definite.
MetricJet curvature_from_components(const MetricComponents& components, const Eigen::VectorXd& x,
                                    const MetricSteps& steps = {});

class BaseMetric {
 public:
  virtual ~BaseMetric() = default;
  virtual Eigen::MatrixXd components(const Eigen::VectorXd& x) const = 0;
  virtual MetricJet jet(const Eigen::VectorXd& x) const = 0;
  virtual bool is_flat() const { return false; }
  virtual std::string describe() const = 0;
  /// Clearance from the field boundary needed by jet() at x.
  virtual double stencil_reach(const Eigen::VectorXd& /*x*/) const { return 0.0; }
};

using MetricPtr = std::shared_ptr<const BaseMetric>;

class FlatMetric final : public BaseMetric {
 public:
  Eigen::MatrixXd components(const Eigen::VectorXd& x) const override;
  MetricJet jet(const Eigen::VectorXd& x) const override;
  bool is_flat() const override { return true; }
  std::string describe() const override { return "flat"; }
};

/// g = factor(x)^-2 delta, curvature in closed form from the jet of the factor.
class ConformallyFlatMetric final : public BaseMetric {
 public:
  ConformallyFlatMetric(FieldPtr factor, std::string name);
  Eigen::MatrixXd components(const Eigen::VectorXd& x) const override;
  MetricJet jet(const Eigen::VectorXd& x) const override;
  std::string describe() const override { return name_; }

 private:
  FieldPtr factor_;
  std::string name_;
};

/// General metric given by component functions; curvature by finite differences.
class ComponentMetric final : public BaseMetric {
 public:
  ComponentMetric(MetricComponents components, std::string name, MetricSteps steps = {});
  Eigen::MatrixXd components(const Eigen::VectorXd& x) const override;
  MetricJet jet(const Eigen::VectorXd& x) const override;
  std::string describe() const override { return name_; }
  double stencil_reach(const Eigen::VectorXd& x) const override { return steps_.reach(x); }

 private:
  MetricComponents components_;
  std::string name_;
  MetricSteps steps_;
};

MetricJet metric_jet(const BaseMetric& metric, const Eigen::VectorXd& x);

/// phi(x) = (1 + |x|^2) / 2, the stereographic factor of the unit round sphere.
FieldPtr round_sphere_factor();

/// Unit round sphere metric phi^-2 delta on R^n (scalar curvature n(n-1)).
/// `finite_difference` selects the component/FD route instead of closed form.
MetricPtr round_sphere_metric(bool finite_difference, MetricSteps steps = {});

MetricPtr flat_metric();

}  // namespace curvkit
