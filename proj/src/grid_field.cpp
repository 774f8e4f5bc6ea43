#include "curvkit/grid_field.hpp"

#include "curvkit/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace curvkit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

long GridSpec::sample_count() const {
  long c = 1;
  for (int s : sizes) c *= s;
  return c;
}

void GridSpec::validate() const {
  if (n < 1) throw Error(ErrorKind::ParameterOutOfRange, "grid dimension must be positive");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::ParameterOutOfRange, "grid spacing must be positive");
  if (origin.size() != n || static_cast<int>(sizes.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "grid origin/sizes do not match n");
  }
  for (int s : sizes) {
    if (s < 5) throw Error(ErrorKind::ParameterOutOfRange, "grid needs at least 5 samples per axis");
  }
}

namespace {

Domain grid_domain(const GridSpec& spec) {
  spec.validate();
  VectorXd hi = spec.origin;
  for (int i = 0; i < spec.n; ++i) hi[i] += (spec.sizes[i] - 1) * spec.h;
  return Domain::box(spec.origin, hi);
}

// Quadratic Lagrange basis on nodes -1, 0, 1 at offset t (units of h):
// values, first and second derivatives with respect to t.
struct Basis {
  double v[3], d1[3], d2[3];
};

Basis quadratic_basis(double t) {
  Basis b;
  b.v[0] = 0.5 * t * (t - 1.0);
  b.v[1] = 1.0 - t * t;
  b.v[2] = 0.5 * t * (t + 1.0);
  b.d1[0] = t - 0.5;
  b.d1[1] = -2.0 * t;
  b.d1[2] = t + 0.5;
  b.d2[0] = 1.0;
  b.d2[1] = -2.0;
  b.d2[2] = 1.0;
  return b;
}

}  // namespace

GridField::GridField(GridSpec spec, std::vector<double> samples, std::string source)
    : ScalarField(grid_domain(spec)), spec_(std::move(spec)), samples_(std::move(samples)), source_(std::move(source)) {
  if (static_cast<long>(samples_.size()) != spec_.sample_count()) {
    throw Error(ErrorKind::Parse, fmt::format("grid expects {} samples, got {}", spec_.sample_count(), samples_.size()));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "grid sample is not finite");
  }
}

double GridField::boundary_band(const VectorXd&) const { return 2.0 * spec_.h; }

double GridField::sample(const std::vector<int>& index) const {
  long flat = 0;
  for (int i = 0; i < spec_.n; ++i) flat = flat * spec_.sizes[i] + index[i];
  return samples_[static_cast<std::size_t>(flat)];
}

Jet GridField::compute_jet(const VectorXd& x) const {
  const int n = spec_.n;
  const double h = spec_.h;
  std::vector<int> centre(n);
  std::vector<Basis> basis(n);
  for (int i = 0; i < n; ++i) {
    const double s = (x[i] - spec_.origin[i]) / h;
    int c = static_cast<int>(std::lround(s));
    c = std::clamp(c, 1, spec_.sizes[i] - 2);
    centre[i] = c;
    basis[i] = quadratic_basis(s - c);
  }

  Jet j{0.0, VectorXd::Zero(n), MatrixXd::Zero(n, n)};
  std::vector<int> offset(n, 0), index(n);
  long stencil = 1;
  for (int i = 0; i < n; ++i) stencil *= 3;
  for (long k = 0; k < stencil; ++k) {
    long rem = k;
    for (int i = n - 1; i >= 0; --i) {
      offset[i] = static_cast<int>(rem % 3);
      rem /= 3;
      index[i] = centre[i] + offset[i] - 1;
    }
    const double f = sample(index);
    double w = 1.0;
    for (int i = 0; i < n; ++i) w *= basis[i].v[offset[i]];
    j.value += w * f;
    for (int a = 0; a < n; ++a) {
      double ga = 1.0;
      for (int i = 0; i < n; ++i) ga *= (i == a) ? basis[i].d1[offset[i]] : basis[i].v[offset[i]];
      j.gradient[a] += ga * f / h;
      for (int b = 0; b < n; ++b) {
        double hab = 1.0;
        for (int i = 0; i < n; ++i) {
          if (i == a && i == b) {
            hab *= basis[i].d2[offset[i]];
          } else if (i == a || i == b) {
            hab *= basis[i].d1[offset[i]];
          } else {
            hab *= basis[i].v[offset[i]];
          }
        }
        j.hessian(a, b) += hab * f / (h * h);
      }
    }
  }
  return j;
}

std::vector<double> sample_on_grid(const ScalarField& field, const GridSpec& spec) {
  spec.validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.sample_count()));
  std::vector<int> index(spec.n, 0);
  VectorXd x(spec.n);
  for (long k = 0; k < spec.sample_count(); ++k) {
    long rem = k;
    for (int i = spec.n - 1; i >= 0; --i) {
      index[i] = static_cast<int>(rem % spec.sizes[i]);
      rem /= spec.sizes[i];
      x[i] = spec.origin[i] + index[i] * spec.h;
    }
    out.push_back(field.eval_value(x));
  }
  return out;
}

void write_grid_csv(std::ostream& out, const GridSpec& spec, const std::vector<double>& samples) {
  spec.validate();
  if (static_cast<long>(samples.size()) != spec.sample_count()) {
    throw Error(ErrorKind::DimensionMismatch, "sample count does not match grid");
  }
  std::string line = fmt::format("{},{:.17g}", spec.n, spec.h);
  for (int i = 0; i < spec.n; ++i) line += fmt::format(",{:.17g}", spec.origin[i]);
  for (int i = 0; i < spec.n; ++i) line += fmt::format(",{}", spec.sizes[i]);
  out << line << '\n';
  for (double v : samples) out << fmt::format("{:.17g}", v) << '\n';
}

namespace {

double parse_double(std::string_view s, int line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Parse, fmt::format("grid line {}: '{}' is not a number", line, s));
  }
  return v;
}

}  // namespace

GridField read_grid_csv(std::istream& in, std::string source) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "grid file is empty");
  std::vector<double> head;
  {
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      head.push_back(parse_double(rest.substr(0, comma), 1));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  if (head.size() < 4) throw Error(ErrorKind::Parse, "grid header needs n,h,origin...,sizes...");
  const double n_raw = head[0];
  const int n = static_cast<int>(n_raw);
  if (n_raw != n || n < 1 || head.size() != static_cast<std::size_t>(2 + 2 * n)) {
    throw Error(ErrorKind::Parse, "grid header length does not match n");
  }
  GridSpec spec;
  spec.n = n;
  spec.h = head[1];
  spec.origin.resize(n);
  spec.sizes.resize(n);
  for (int i = 0; i < n; ++i) {
    spec.origin[i] = head[2 + i];
    const double s = head[2 + n + i];
    if (s != std::floor(s)) throw Error(ErrorKind::Parse, "grid size is not an integer");
    spec.sizes[i] = static_cast<int>(s);
  }
  spec.validate();

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(spec.sample_count()));
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    samples.push_back(parse_double(line, lineno));
  }
  return GridField(std::move(spec), std::move(samples), std::move(source));
}

GridField load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open grid file '{}'", path));
  return read_grid_csv(in, "grid:" + path);
}

}  // namespace curvkit
