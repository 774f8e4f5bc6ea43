#pragma once

// Elementary symmetric invariants of square matrices and the trace identity
// relating sigma1(A) * sigma1(A|1) to sigma2(A).

#include <Eigen/Dense>

#include <cstdint>

namespace curvkit::syminv {

/// Real n x n matrix with n >= 2 and finite entries.
class SquareMatrix {
 public:
  explicit SquareMatrix(Eigen::MatrixXd entries);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  double max_norm() const { return entries_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd entries_;
};

double sigma1(const SquareMatrix& a);

/// Trace with the first row and column deleted.
double sigma1_minor(const SquareMatrix& a);

double sigma2(const SquareMatrix& a);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Both sides of
///   s1(A) s1(A|1) = s2(A) + n/(2(n-1)) s1(A|1)^2 + sum_{i<j} a_ij a_ji
///                   + 1/(2(n-1)) sum_{2<=i<j<=n} (a_ii - a_jj)^2.
/// For n = 2 the last sum is empty.
IdentitySides identity_sides(const SquareMatrix& a);

/// lhs - rhs of identity_sides(); zero up to rounding.
double identity_residual(const SquareMatrix& a);

struct NewtonGap {
  double gap = 0.0;
  /// max(1, |s1(A) s1(A|1)|), the scale for sign tolerances on `gap`.
  double scale = 1.0;
  bool minor_diagonal_equal = false;
  bool off_diagonal_products_vanish = false;
  bool equality = false;
};

/// gap = s1(A) s1(A|1) - s2(A) - n/(2(n-1)) s1(A|1)^2, nonnegative whenever
/// a_ij a_ji >= 0 for all i < j. Equality flags use `rel_tol` relative to the
/// max-norm (squared for the products). Throws PreconditionViolated when some
/// a_ij a_ji < -rel_tol * max_norm^2.
NewtonGap newton_gap(const SquareMatrix& a, double rel_tol = 1e-8);

struct IdentitySuiteResult {
  std::uint64_t seed = 0;
  long trials = 0;
  int n_min = 2;
  int n_max = 8;
  /// max over trials of |residual| / max(1, |lhs|).
  double max_relative_residual = 0.0;
  double max_abs_residual = 0.0;
  long worst_trial = -1;
  int worst_n = 0;
  /// Newton gap on the random matrices whose products happen to satisfy the sign condition.
  long sign_condition_trials = 0;
  double min_scaled_gap = 0.0;
};

/// Randomized check of the identity with i.i.d. U(-1,1) entries and
/// n drawn uniformly from [n_min, n_max].
IdentitySuiteResult run_identity_suite(long trials, int n_min, int n_max, std::uint64_t seed);

}  // namespace curvkit::syminv
