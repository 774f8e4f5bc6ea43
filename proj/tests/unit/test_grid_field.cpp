#include "curvkit/error.hpp"
#include "curvkit/grid_field.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace curvkit;
using Eigen::VectorXd;

namespace {

GridSpec square_grid(int n, int size, double h) {
  GridSpec s;
  s.n = n;
  s.h = h;
  s.origin = VectorXd::Constant(n, -0.5 * h * (size - 1));
  s.sizes.assign(static_cast<std::size_t>(n), size);
  return s;
}

}  // namespace

TEST(GridField, ReproducesQuadraticsExactly) {
  PolynomialField quad({{1.0, {2, 0}}, {-0.5, {1, 1}}, {2.0, {0, 2}}, {0.3, {1, 0}}, {0.7, {0, 0}}});
  const GridSpec spec = square_grid(2, 21, 0.1);
  const GridField g(spec, sample_on_grid(quad, spec));
  VectorXd x(2);
  x << 0.237, -0.151;
  const Jet a = quad.eval_jet(x), b = g.eval_jet(x);
  EXPECT_NEAR(a.value, b.value, 1e-12);
  EXPECT_LT((a.gradient - b.gradient).norm(), 1e-11);
  EXPECT_LT((a.hessian - b.hessian).norm(), 1e-9);
  EXPECT_EQ(g.mode(), JetMode::Grid);
}

TEST(GridField, CsvRoundTrip) {
  RandomAnalyticField f(4, 2);
  const GridSpec spec = square_grid(2, 7, 0.25);
  const auto samples = sample_on_grid(f, spec);
  std::stringstream ss;
  write_grid_csv(ss, spec, samples);
  const GridField g = read_grid_csv(ss);
  EXPECT_EQ(g.spec().sizes, spec.sizes);
  EXPECT_EQ(g.samples(), samples);
  std::string first;
  std::stringstream again;
  write_grid_csv(again, spec, samples);
  std::getline(again, first);
  EXPECT_EQ(first, "2,0.25,-0.75,-0.75,7,7");
}

TEST(GridField, LoadsFromFile) {
  const GridSpec spec = square_grid(2, 7, 0.5);
  const std::string path = ::testing::TempDir() + "grid_roundtrip.csv";
  {
    std::ofstream out(path);
    write_grid_csv(out, spec, sample_on_grid(ConstantField(1.5), spec));
  }
  const GridField g = load_grid_csv(path);
  EXPECT_DOUBLE_EQ(g.eval_value(VectorXd::Zero(2)), 1.5);
  std::remove(path.c_str());
  EXPECT_THROW(load_grid_csv(path), Error);
}

TEST(GridField, MalformedInputsThrow) {
  std::stringstream bad_header("2,0.5,0\n");
  EXPECT_THROW(read_grid_csv(bad_header), Error);
  std::stringstream short_data("1,0.5,0,5\n1\n2\n");
  EXPECT_THROW(read_grid_csv(short_data), Error);
  std::stringstream not_number("1,0.5,0,5\n1\n2\nx\n4\n5\n");
  EXPECT_THROW(read_grid_csv(not_number), Error);
  GridSpec tiny = square_grid(2, 3, 0.1);
  EXPECT_THROW(tiny.validate(), Error);
}

TEST(GridField, BoundaryBandEnforced) {
  const GridSpec spec = square_grid(2, 11, 0.1);
  const GridField g(spec, sample_on_grid(ConstantField(0.0), spec));
  VectorXd x(2);
  x << 0.49, 0.0;
  EXPECT_FALSE(g.in_domain(x));
  EXPECT_THROW(g.eval_jet(x), Error);
}
