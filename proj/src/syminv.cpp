#include "curvkit/syminv.hpp"

#include "curvkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace curvkit::syminv {

SquareMatrix::SquareMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  }
  if (entries_.rows() < 2) {
    throw Error(ErrorKind::ParameterOutOfRange, "matrix dimension must be at least 2");
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  }
}

double sigma1(const SquareMatrix& a) { return a.entries().trace(); }

double sigma1_minor(const SquareMatrix& a) {
  double s = 0.0;
  for (int i = 1; i < a.n(); ++i) s += a(i, i);
  return s;
}

double sigma2(const SquareMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    for (int j = i + 1; j < a.n(); ++j) s += a(i, i) * a(j, j) - a(i, j) * a(j, i);
  }
  return s;
}

namespace {

double cross_products(const SquareMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.n(); ++i) {
    for (int j = i + 1; j < a.n(); ++j) s += a(i, j) * a(j, i);
  }
  return s;
}

// Empty for n = 2.
double minor_diagonal_spread(const SquareMatrix& a) {
  double s = 0.0;
  for (int i = 1; i < a.n(); ++i) {
    for (int j = i + 1; j < a.n(); ++j) {
      const double d = a(i, i) - a(j, j);
      s += d * d;
    }
  }
  return s;
}

}  // namespace

IdentitySides identity_sides(const SquareMatrix& a) {
  const double n = a.n();
  const double m = sigma1_minor(a);
  IdentitySides sides;
  sides.lhs = sigma1(a) * m;
  sides.rhs = sigma2(a) + n / (2.0 * (n - 1.0)) * m * m + cross_products(a) +
              minor_diagonal_spread(a) / (2.0 * (n - 1.0));
  return sides;
}

double identity_residual(const SquareMatrix& a) {
  const auto sides = identity_sides(a);
  return sides.lhs - sides.rhs;
}

NewtonGap newton_gap(const SquareMatrix& a, double rel_tol) {
  const double norm = a.max_norm();
  const double entry_tol = rel_tol * norm;
  const double product_tol = rel_tol * norm * norm;

  NewtonGap out;
  out.off_diagonal_products_vanish = true;
  for (int i = 0; i < a.n(); ++i) {
    for (int j = i + 1; j < a.n(); ++j) {
      const double p = a(i, j) * a(j, i);
      if (p < -product_tol) {
        throw Error(ErrorKind::PreconditionViolated,
                    "a_ij * a_ji < 0 for some i < j; the gap has no sign");
      }
      if (std::abs(p) > product_tol) out.off_diagonal_products_vanish = false;
    }
  }
  out.minor_diagonal_equal = true;
  for (int i = 1; i < a.n(); ++i) {
    if (std::abs(a(i, i) - a(1, 1)) > entry_tol) out.minor_diagonal_equal = false;
  }

  const double n = a.n();
  const double m = sigma1_minor(a);
  const double lhs = sigma1(a) * m;
  out.gap = lhs - sigma2(a) - n / (2.0 * (n - 1.0)) * m * m;
  out.scale = std::max(1.0, std::abs(lhs));
  out.equality = out.minor_diagonal_equal && out.off_diagonal_products_vanish;
  return out;
}

IdentitySuiteResult run_identity_suite(long trials, int n_min, int n_max, std::uint64_t seed) {
  if (n_min < 2 || n_max < n_min) {
    throw Error(ErrorKind::ParameterOutOfRange, "need 2 <= n_min <= n_max");
  }
  if (trials <= 0) throw Error(ErrorKind::ParameterOutOfRange, "trials must be positive");

  IdentitySuiteResult result;
  result.seed = seed;
  result.trials = trials;
  result.n_min = n_min;
  result.n_max = n_max;
  result.min_scaled_gap = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(n_min, n_max);

  for (long t = 0; t < trials; ++t) {
    const int n = dim(rng);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
    }
    const SquareMatrix a(std::move(m));
    const auto sides = identity_sides(a);
    const double res = std::abs(sides.lhs - sides.rhs);
    const double rel = res / std::max(1.0, std::abs(sides.lhs));
    if (rel > result.max_relative_residual || result.worst_trial < 0) {
      result.max_relative_residual = rel;
      result.worst_trial = t;
      result.worst_n = n;
    }
    result.max_abs_residual = std::max(result.max_abs_residual, res);

    bool sign_ok = true;
    for (int i = 0; i < n && sign_ok; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (a(i, j) * a(j, i) < 0.0) {
          sign_ok = false;
          break;
        }
      }
    }
    if (sign_ok) {
      const auto g = newton_gap(a);
      ++result.sign_condition_trials;
      result.min_scaled_gap = std::min(result.min_scaled_gap, g.gap / g.scale);
    }
  }
  if (result.sign_condition_trials == 0) result.min_scaled_gap = 0.0;
  return result;
}

}  // namespace curvkit::syminv
