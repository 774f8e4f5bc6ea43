#include "curvkit/field_catalog.hpp"

#include "curvkit/error.hpp"
#include "curvkit/grid_field.hpp"
#include "curvkit/revolution.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

namespace curvkit {

using Eigen::VectorXd;

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long parse_integer(std::string_view text) {
  long v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw Error(ErrorKind::Parse, fmt::format("expected an integer, got '{}'", text));
  return v;
}

VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void expect_count(std::string_view name, const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (v.size() < lo || v.size() > hi)
    throw Error(ErrorKind::Parse, fmt::format("'{}' takes {} to {} parameters, got {}", name, lo, hi, v.size()));
}

}  // namespace

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(v))
    throw Error(ErrorKind::Parse, fmt::format("expected a finite number, got '{}'", text));
  return v;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) out.push_back(parse_real(part));
  return out;
}

FieldPtr parse_field(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;

  if (name == "zero" && !has_args) return std::make_shared<ConstantField>(0.0);
  if (name == "paraboloid" && !has_args) return std::make_shared<QuadraticCupField>();
  if (name == "rotation-f" && !has_args) return rotation_f_graph();

  if (!has_args) throw Error(ErrorKind::Parse, fmt::format("unknown field spec '{}'", spec));

  if (name == "const") {
    const auto v = parse_reals(rest);
    expect_count(name, v, 1, 1);
    return std::make_shared<ConstantField>(v[0]);
  }
  if (name == "plane") {
    const auto v = parse_reals(rest);
    expect_count(name, v, 1, 64);
    return std::make_shared<PlaneField>(to_vector(v));
  }
  if (name == "cup") {
    const auto v = parse_reals(rest);
    expect_count(name, v, 1, 64);
    return std::make_shared<QuadraticCupField>(to_vector(v));
  }
  if (name == "sphere" || name == "hemisphere") {
    const auto v = parse_reals(rest);
    expect_count(name, v, 1, name == "sphere" ? 2 : 1);
    return std::make_shared<SphereCapField>(v[0], v.size() > 1 ? v[1] : 0.0);
  }
  if (name == "bump") {
    const auto v = parse_reals(rest);
    expect_count(name, v, 2, 3);
    return std::make_shared<BumpField>(v[0], v[1], v.size() > 2 ? v[2] : 0.0);
  }
  if (name == "random") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "random takes seed,n");
    const long seed = parse_integer(parts[0]);
    const long n = parse_integer(parts[1]);
    if (seed < 0) throw Error(ErrorKind::Parse, "random seed must be nonnegative");
    if (n < 1 || n > 16) throw Error(ErrorKind::ParameterOutOfRange, "random field dimension must be in [1, 16]");
    return std::make_shared<RandomAnalyticField>(static_cast<std::uint64_t>(seed), static_cast<int>(n));
  }
  if (name == "poly") {
    std::vector<Monomial> terms;
    for (auto term : split(rest, ',')) {
      const auto at = term.find('@');
      if (at == std::string_view::npos) throw Error(ErrorKind::Parse, fmt::format("poly term '{}' lacks '@'", term));
      Monomial m;
      m.coefficient = parse_real(term.substr(0, at));
      for (auto e : split(term.substr(at + 1), '.')) {
        const long k = parse_integer(e);
        if (k < 0) throw Error(ErrorKind::Parse, "poly exponents must be nonnegative");
        m.exponents.push_back(static_cast<int>(k));
      }
      terms.push_back(std::move(m));
    }
    return std::make_shared<PolynomialField>(std::move(terms));
  }
  if (name == "radial") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "radial takes <u|v>:<a>");
    const double a = parse_real(parts[1]);
    if (parts[0] == "u") return revolution_field(RevolutionProfile::sphere_u(a));
    if (parts[0] == "v") return revolution_field(RevolutionProfile::sphere_v(a));
    throw Error(ErrorKind::Parse, fmt::format("unknown radial profile '{}'", parts[0]));
  }
  if (name == "grid") return std::make_shared<GridField>(load_grid_csv(std::string(rest)));
  if (name == "fd" || name == "scale") {
    const auto colon2 = rest.find(':');
    if (colon2 == std::string_view::npos) throw Error(ErrorKind::Parse, fmt::format("{} needs <param>:<spec>", name));
    const auto param = rest.substr(0, colon2);
    auto inner = parse_field(rest.substr(colon2 + 1));
    if (name == "scale") return std::make_shared<ScaledField>(parse_real(param), std::move(inner));
    std::optional<double> step;
    if (param != "auto") {
      step = parse_real(param);
      if (!(*step > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "difference step must be positive");
    }
    return std::make_shared<FiniteDifferenceField>(std::move(inner), step);
  }
  throw Error(ErrorKind::Parse, fmt::format("unknown field spec '{}'", spec));
}

MetricPtr parse_base(std::string_view spec) {
  if (spec == "flat") return flat_metric();
  if (spec == "round") return round_sphere_metric(false);
  if (spec == "round-fd") return round_sphere_metric(true);
  throw Error(ErrorKind::Parse, fmt::format("unknown base metric '{}'", spec));
}

AmbientSpec parse_ambient(std::string_view spec, MetricPtr base) {
  AmbientSpec amb;
  amb.base = base ? std::move(base) : flat_metric();
  if (spec == "flat" || spec == "product") return amb;
  if (spec == "spherical") {
    amb.factor = std::make_shared<SphericalFactor>();
    return amb;
  }
  const auto parts = split(spec, ':');
  if (parts.size() == 3 && parts[0] == "conformal") {
    const double v = parse_real(parts[2]);
    if (parts[1] == "const") {
      amb.factor = std::make_shared<ConstantFactor>(v);
      return amb;
    }
    if (parts[1] == "exp") {
      amb.factor = std::make_shared<ExpTimeFactor>(v);
      return amb;
    }
  }
  throw Error(ErrorKind::Parse, fmt::format("unknown ambient '{}'", spec));
}

}  // namespace curvkit
