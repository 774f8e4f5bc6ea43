#include "curvkit/metric.hpp"

#include "curvkit/ambient.hpp"
#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <limits>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd MetricJet::contract_christoffel(const VectorXd& covector) const {
  const auto n = covector.size();
  MatrixXd out = MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) out += covector[m] * christoffel[m];
  return out;
}

double MetricSteps::first_at(const VectorXd& x) const {
  if (first) return *first;
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, x.norm());
}

double MetricSteps::second_at(const VectorXd& x) const {
  if (second) return *second;
  return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * std::max(1.0, x.norm());
}

namespace {

constexpr std::array<int, 4> kOffsets{-2, -1, 1, 2};
constexpr std::array<double, 4> kFirstWeights{1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

void require_positive_definite(const MatrixXd& g) {
  if (!g.allFinite()) throw Error(ErrorKind::NonFinite, "metric components are not finite");
  Eigen::LLT<MatrixXd> llt(g);
  if (llt.info() != Eigen::Success || (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::NotPositiveDefinite, "metric is not symmetric positive definite");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::NotPositiveDefinite, "metric has a non-positive eigenvalue");
  }
}

// Ricci and scalar curvature from g, dg, d2g:
// Gamma^m_ij = 1/2 g^ml (d_i g_jl + d_j g_il - d_l g_ij),
// R_ij = d_k Gamma^k_ij - d_j Gamma^k_ik + Gamma^k_kl Gamma^l_ij - Gamma^k_jl Gamma^l_ik.
MetricJet assemble(const MatrixXd& g, const std::vector<MatrixXd>& dg,
                   const std::vector<std::vector<MatrixXd>>& d2g) {
  const auto n = g.rows();
  MetricJet jet;
  jet.g = g;
  jet.g_inv = g.inverse();
  const MatrixXd& gi = jet.g_inv;

  // first-kind symbols c[l](i,j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  std::vector<MatrixXd> first_kind(n, MatrixXd::Zero(n, n));
  for (Eigen::Index l = 0; l < n; ++l) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        first_kind[l](i, j) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      }
    }
  }
  jet.christoffel.assign(n, MatrixXd::Zero(n, n));
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index l = 0; l < n; ++l) jet.christoffel[m] += gi(m, l) * first_kind[l];
  }

  // dgamma[k][m](i,j) = d_k Gamma^m_ij
  std::vector<std::vector<MatrixXd>> dgamma(n, std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
  for (Eigen::Index k = 0; k < n; ++k) {
    const MatrixXd dgi = -gi * dg[k] * gi;
    for (Eigen::Index l = 0; l < n; ++l) {
      MatrixXd d_first(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          d_first(i, j) = 0.5 * (d2g[k][i](j, l) + d2g[k][j](i, l) - d2g[k][l](i, j));
        }
      }
      for (Eigen::Index m = 0; m < n; ++m) {
        dgamma[k][m] += dgi(m, l) * first_kind[l] + gi(m, l) * d_first;
      }
    }
  }

  const auto& gam = jet.christoffel;
  jet.ricci = MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double r = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        r += dgamma[k][k](i, j) - dgamma[j][k](i, k);
        for (Eigen::Index l = 0; l < n; ++l) {
          r += gam[k](k, l) * gam[l](i, j) - gam[k](j, l) * gam[l](i, k);
        }
      }
      jet.ricci(i, j) = r;
    }
  }
  jet.scalar = (gi.cwiseProduct(jet.ricci)).sum();
  return jet;
}

}  // namespace

MetricJet curvature_from_components(const MetricComponents& components, const VectorXd& x,
                                    const MetricSteps& steps) {
  const auto n = x.size();
  const MatrixXd g = components(x);
  if (g.rows() != n || g.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "metric components do not match the point dimension");
  }
  require_positive_definite(g);

  const double h1 = steps.first_at(x);
  const double h2 = steps.second_at(x);

  std::vector<MatrixXd> dg(n, MatrixXd::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) {
      VectorXd p = x;
      p[k] += kOffsets[s] * h1;
      dg[k] += kFirstWeights[s] * components(p);
    }
    dg[k] /= h1;
  }

  std::vector<std::vector<MatrixXd>> d2g(n, std::vector<MatrixXd>(n, MatrixXd::Zero(n, n)));
  for (Eigen::Index k = 0; k < n; ++k) {
    // (-f(x+2h) + 16 f(x+h) - 30 f(x) + 16 f(x-h) - f(x-2h)) / (12 h^2)
    MatrixXd acc = -30.0 * g;
    for (int s = 0; s < 4; ++s) {
      VectorXd p = x;
      p[k] += kOffsets[s] * h2;
      const double w = (std::abs(kOffsets[s]) == 1) ? 16.0 : -1.0;
      acc += w * components(p);
    }
    d2g[k][k] = acc / (12.0 * h2 * h2);
    for (Eigen::Index l = k + 1; l < n; ++l) {
      MatrixXd mixed = MatrixXd::Zero(n, n);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          VectorXd p = x;
          p[k] += kOffsets[a] * h2;
          p[l] += kOffsets[b] * h2;
          mixed += kFirstWeights[a] * kFirstWeights[b] * components(p);
        }
      }
      mixed /= h2 * h2;
      d2g[k][l] = mixed;
      d2g[l][k] = mixed;
    }
  }
  return assemble(g, dg, d2g);
}

// ---------------------------------------------------------------------------

MatrixXd FlatMetric::components(const VectorXd& x) const { return MatrixXd::Identity(x.size(), x.size()); }

MetricJet FlatMetric::jet(const VectorXd& x) const {
  const auto n = x.size();
  MetricJet j;
  j.g = MatrixXd::Identity(n, n);
  j.g_inv = j.g;
  j.christoffel.assign(n, MatrixXd::Zero(n, n));
  j.ricci = MatrixXd::Zero(n, n);
  j.scalar = 0.0;
  return j;
}

ConformallyFlatMetric::ConformallyFlatMetric(FieldPtr factor, std::string name)
    : factor_(std::move(factor)), name_(std::move(name)) {}

MatrixXd ConformallyFlatMetric::components(const VectorXd& x) const {
  const double phi = factor_->eval_value(x);
  if (!(phi > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "conformal factor must be positive");
  return MatrixXd::Identity(x.size(), x.size()) / (phi * phi);
}

MetricJet ConformallyFlatMetric::jet(const VectorXd& x) const {
  const auto n = x.size();
  const double dn = static_cast<double>(n);
  const Jet f = factor_->eval_jet(x);
  if (!(f.value > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "conformal factor must be positive");

  // g = exp(2w) delta with w = -log(phi).
  const VectorXd dw = -f.gradient / f.value;
  const MatrixXd d2w = -f.hessian / f.value + f.gradient * f.gradient.transpose() / (f.value * f.value);
  const double lap = d2w.trace();
  const double dw2 = dw.squaredNorm();
  const MatrixXd id = MatrixXd::Identity(n, n);

  MetricJet j;
  j.g = id / (f.value * f.value);
  j.g_inv = id * (f.value * f.value);
  j.christoffel.assign(n, MatrixXd::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index jj = 0; jj < n; ++jj) {
        j.christoffel[k](i, jj) = (i == k ? dw[jj] : 0.0) + (jj == k ? dw[i] : 0.0) - (i == jj ? dw[k] : 0.0);
      }
    }
  }
  j.ricci = -(dn - 2.0) * (d2w - dw * dw.transpose()) - (lap + (dn - 2.0) * dw2) * id;
  j.scalar = f.value * f.value * (-2.0 * (dn - 1.0) * lap - (dn - 2.0) * (dn - 1.0) * dw2);
  return j;
}

ComponentMetric::ComponentMetric(MetricComponents components, std::string name, MetricSteps steps)
    : components_(std::move(components)), name_(std::move(name)), steps_(steps) {}

MatrixXd ComponentMetric::components(const VectorXd& x) const { return components_(x); }

MetricJet ComponentMetric::jet(const VectorXd& x) const {
  return curvature_from_components(components_, x, steps_);
}

MetricJet metric_jet(const BaseMetric& metric, const VectorXd& x) {
  MetricJet j = metric.jet(x);
  if (!j.g.allFinite() || !j.ricci.allFinite() || !std::isfinite(j.scalar)) {
    throw Error(ErrorKind::NonFinite, "metric jet is not finite");
  }
  return j;
}

FieldPtr round_sphere_factor() { return std::make_shared<QuadraticCupField>(Eigen::VectorXd{}, 0.5); }

MetricPtr round_sphere_metric(bool finite_difference, MetricSteps steps) {
  if (!finite_difference) return std::make_shared<ConformallyFlatMetric>(round_sphere_factor(), "round");
  auto comps = [](const VectorXd& x) -> MatrixXd {
    const double phi = 0.5 * (1.0 + x.squaredNorm());
    return MatrixXd::Identity(x.size(), x.size()) / (phi * phi);
  };
  return std::make_shared<ComponentMetric>(comps, "round-fd", steps);
}

MetricPtr flat_metric() { return std::make_shared<FlatMetric>(); }

// ---------------------------------------------------------------------------

FactorJet ConformalFactor::eval(const VectorXd& x, double t) const {
  FactorJet j = compute(x, t);
  if (!(j.value > 0.0) || !std::isfinite(j.value)) {
    throw Error(ErrorKind::ParameterOutOfRange, fmt::format("conformal factor {} is not positive", describe()));
  }
  return j;
}

FactorJet SphericalFactor::compute(const VectorXd& x, double t) const {
  return {0.5 * (1.0 + x.squaredNorm() + t * t), x, t};
}

ConstantFactor::ConstantFactor(double c) : c_(c) {
  if (!(c > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "constant conformal factor must be positive");
}

std::string ConstantFactor::describe() const { return fmt::format("const:{}", c_); }

FactorJet ConstantFactor::compute(const VectorXd& x, double) const { return {c_, VectorXd::Zero(x.size()), 0.0}; }

std::string ExpTimeFactor::describe() const { return fmt::format("exp:{}", k_); }

FactorJet ExpTimeFactor::compute(const VectorXd& x, double t) const {
  const double v = std::exp(k_ * t);
  return {v, VectorXd::Zero(x.size()), k_ * v};
}

std::string AmbientSpec::describe() const {
  const std::string b = base ? base->describe() : "flat";
  return factor ? fmt::format("{}+{}", b, factor->describe()) : b;
}

AmbientSpec flat_product_ambient() { return {flat_metric(), nullptr}; }

AmbientSpec spherical_ambient() { return {flat_metric(), std::make_shared<SphericalFactor>()}; }

}  // namespace curvkit
