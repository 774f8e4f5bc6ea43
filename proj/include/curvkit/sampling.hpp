#pragma once

// Deterministic point sets: low-discrepancy directions and level-set points
// found by root-finding along rays.

#include "curvkit/fields.hpp"

#include <cstdint>
#include <vector>

namespace curvkit {

/// `count` unit vectors in R^n from an additive-recurrence (R_d) sequence
/// whose starting offset is drawn from `seed`.
std::vector<Eigen::VectorXd> low_discrepancy_directions(int n, int count, std::uint64_t seed);

/// Points of [0,1)^d from the same R_d recurrence, starting offset from `seed`.
std::vector<Eigen::VectorXd> low_discrepancy_points(int d, int count, std::uint64_t seed);

struct RaySampling {
  Eigen::VectorXd center;
  int rays = 20;
  double max_distance = 4.0;
  int scan_steps = 400;
  std::uint64_t seed = 0;
};

/// One point per ray where u - level first changes sign along the ray
/// (rays without a crossing inside the domain are skipped), refined with
/// TOMS 748 to full precision.
std::vector<Eigen::VectorXd> sample_level_set(const ScalarField& field, double level, const RaySampling& sampling);

}  // namespace curvkit
