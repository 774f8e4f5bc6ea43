#pragma once

// Reference computations for the tests. Each one takes a different route
// from the library code it is compared against.

#include "curvkit/fields.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Fourth-order central difference of f at s.
inline double derivative(const std::function<double(double)>& f, double s, double h = 1e-3) {
  return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
}

/// sigma_2 as the sum of pairwise products of the (complex) eigenvalues.
inline double sigma2_from_eigenvalues(const MatrixXd& a) {
  const Eigen::VectorXcd ev = Eigen::EigenSolver<MatrixXd>(a, false).eigenvalues();
  std::complex<double> s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = i + 1; j < ev.size(); ++j) s += ev[i] * ev[j];
  return s.real();
}

inline MatrixXd random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

inline MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<MatrixXd> qr(m);
  MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Upward unit normal of the Euclidean graph, from the gradient only.
inline VectorXd graph_normal(const curvkit::ScalarField& f, const VectorXd& x) {
  const VectorXd g = f.eval_jet(x).gradient;
  VectorXd nu(g.size() + 1);
  nu << -g, 1.0;
  return nu / nu.norm();
}

/// Euclidean shape operator A^i_j = -d_j nu^i from differences of the normal
/// field (horizontal components give graph coordinates).
inline MatrixXd shape_from_normal_field(const curvkit::ScalarField& f, const VectorXd& x, double h = 1e-4) {
  const auto n = x.size();
  MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto at = [&](double s) {
      VectorXd y = x;
      y[j] += s;
      return graph_normal(f, y);
    };
    const VectorXd d = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
    a.col(j) = -d.head(n);
  }
  return a;
}

/// u(R^T x) for a fixed rotation R.
class RotatedField final : public curvkit::ScalarField {
 public:
  RotatedField(curvkit::FieldPtr inner, MatrixXd rotation)
      : ScalarField(curvkit::Domain::whole()), inner_(std::move(inner)), r_(std::move(rotation)) {}
  std::optional<int> dimension() const override { return static_cast<int>(r_.rows()); }
  std::string describe() const override { return "rotated"; }

 protected:
  curvkit::Jet compute_jet(const VectorXd& x) const override {
    curvkit::Jet j = inner_->eval_jet(r_.transpose() * x);
    j.gradient = r_ * j.gradient;
    j.hessian = r_ * j.hessian * r_.transpose();
    return j;
  }

 private:
  curvkit::FieldPtr inner_;
  MatrixXd r_;
};

/// max over a fine radial scan of u(r) / (1 - r) on [lo, hi].
inline double radial_barrier_slope(const std::function<double(double)>& u, double lo, double hi, int samples) {
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double r = lo + (hi - lo) * i / samples;
    if (r >= 1.0) continue;
    best = std::max(best, u(r) / (1.0 - r));
  }
  return best;
}

}  // namespace oracle
