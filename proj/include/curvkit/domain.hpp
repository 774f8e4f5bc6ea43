#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace curvkit {

/// Open region of R^n on which a field may be queried.
class Domain {
 public:
  enum class Kind { Whole, Box, Ball, Annulus };

  static Domain whole();
  static Domain box(Eigen::VectorXd lo, Eigen::VectorXd hi);
  /// An empty center means the origin in whatever dimension is queried.
  static Domain ball(double radius, Eigen::VectorXd center = {});
  /// Origin-centred shell inner < |x| < outer.
  static Domain annulus(double inner, double outer);

  Kind kind() const { return kind_; }

  /// True when x lies inside with at least `margin` clearance from the boundary.
  bool contains(const Eigen::VectorXd& x, double margin = 0.0) const;

  /// Dimension fixed by the domain (boxes, centred balls), if any.
  std::optional<int> dimension() const;

  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Whole;
  Eigen::VectorXd lo_, hi_, center_;
  double inner_ = 0.0;
  double outer_ = 0.0;
};

}  // namespace curvkit
