#include "curvkit/domain.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

namespace curvkit {

Domain Domain::whole() { return Domain{}; }

Domain Domain::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size() || lo.size() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "box corners must have the same positive dimension");
  }
  if ((hi.array() <= lo.array()).any()) throw Error(ErrorKind::EmptyDomain, "box has empty extent");
  Domain d;
  d.kind_ = Kind::Box;
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::ball(double radius, Eigen::VectorXd center) {
  if (!(radius > 0.0)) throw Error(ErrorKind::EmptyDomain, "ball radius must be positive");
  Domain d;
  d.kind_ = Kind::Ball;
  d.outer_ = radius;
  d.center_ = std::move(center);
  return d;
}

Domain Domain::annulus(double inner, double outer) {
  if (!(inner >= 0.0) || !(outer > inner)) {
    throw Error(ErrorKind::EmptyDomain, "annulus needs 0 <= inner < outer");
  }
  Domain d;
  d.kind_ = Kind::Annulus;
  d.inner_ = inner;
  d.outer_ = outer;
  return d;
}

bool Domain::contains(const Eigen::VectorXd& x, double margin) const {
  if (!x.allFinite()) return false;
  switch (kind_) {
    case Kind::Whole:
      return true;
    case Kind::Box:
      if (x.size() != lo_.size()) return false;
      return ((x.array() - lo_.array()) > margin).all() && ((hi_.array() - x.array()) > margin).all();
    case Kind::Ball: {
      if (center_.size() != 0 && center_.size() != x.size()) return false;
      const double r = center_.size() == 0 ? x.norm() : (x - center_).norm();
      return r < outer_ - margin;
    }
    case Kind::Annulus: {
      const double r = x.norm();
      return r > inner_ + margin && r < outer_ - margin;
    }
  }
  return false;
}

std::optional<int> Domain::dimension() const {
  if (kind_ == Kind::Box) return static_cast<int>(lo_.size());
  if (kind_ == Kind::Ball && center_.size() != 0) return static_cast<int>(center_.size());
  return std::nullopt;
}

std::string Domain::describe() const {
  switch (kind_) {
    case Kind::Whole: return "whole";
    case Kind::Box: return fmt::format("box(dim={})", lo_.size());
    case Kind::Ball: return fmt::format("ball(r={})", outer_);
    case Kind::Annulus: return fmt::format("annulus({},{})", inner_, outer_);
  }
  return "?";
}

}  // namespace curvkit
