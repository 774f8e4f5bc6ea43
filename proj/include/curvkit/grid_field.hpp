#pragma once

// Height functions sampled on a uniform grid.
//
// CSV layout (no locale, '.' decimal separator):
//   line 1:  n,h,origin_1,...,origin_n,size_1,...,size_n
//   then size_1 * ... * size_n lines, one sample per line, row-major
//   (the last axis varies fastest).

#include "curvkit/fields.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace curvkit {

struct GridSpec {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd origin;
  std::vector<int> sizes;

  long sample_count() const;
  /// Throws unless h > 0, at least 5 samples per axis and consistent dimensions.
  void validate() const;
};

/// Tensor-product quadratic interpolation on the 3^n nodes around the nearest
/// grid node; jets are the exact derivatives of that local interpolant.
class GridField final : public ScalarField {
 public:
  GridField(GridSpec spec, std::vector<double> samples, std::string source = "grid");

  JetMode mode() const override { return JetMode::Grid; }
  std::optional<int> dimension() const override { return spec_.n; }
  std::string describe() const override { return source_; }
  double boundary_band(const Eigen::VectorXd& x) const override;

  const GridSpec& spec() const { return spec_; }
  const std::vector<double>& samples() const { return samples_; }

 protected:
  Jet compute_jet(const Eigen::VectorXd& x) const override;

 private:
  double sample(const std::vector<int>& index) const;

  GridSpec spec_;
  std::vector<double> samples_;
  std::string source_;
};

/// Samples `field` at every node of `spec`.
std::vector<double> sample_on_grid(const ScalarField& field, const GridSpec& spec);

void write_grid_csv(std::ostream& out, const GridSpec& spec, const std::vector<double>& samples);
GridField read_grid_csv(std::istream& in, std::string source = "grid");
GridField load_grid_csv(const std::string& path);

}  // namespace curvkit
