#include "curvkit/cli.hpp"

#include "curvkit/barrier.hpp"
#include "curvkit/error.hpp"
#include "curvkit/field_catalog.hpp"
#include "curvkit/revolution.hpp"
#include "curvkit/suites.hpp"
#include "curvkit/syminv.hpp"
#include "report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace curvkit::cli {

using Eigen::VectorXd;

namespace {

constexpr double kMinTolerance = 1e-14;

struct Tolerances {
  double residual = 1e-8;
  double fd_residual = 1e-4;
  double identity = 1e-10;
  double gap = 1e-8;
  double equality = 1e-6;
  double regularity = 1e-6;
  double level = 1e-8;
  double touch = 1e-8;
  double bisection = 1e-10;
  double gradient_bound = 1e-6;
  double scalar = 1e-10;
  double locus = 1e-6;
  double junction = 1e-3;
  double min_order = 1.5;
};

struct RunConfig {
  std::string command;
  std::string field;
  std::string ambient = "flat";
  std::string base = "flat";
  std::vector<double> at;
  std::vector<double> center;
  std::vector<double> levels;
  std::string out = "json";
  std::string output;
  std::uint64_t seed = 1;
  int fields = 20;
  int points = 20;
  int n = 0;
  int n_min = 2;
  int n_max = 3;
  long trials = 100000;
  std::optional<double> fd_step;
  std::string which = "prod";
  double a = 0.5;
  std::optional<double> a_prime;
  double lambda_max = 10.0;
  int radial = 512;
  int angular = 128;
  bool negate = false;
  double margin = 1e-3;
  std::string name;
  int count = 1000;
  Tolerances tol;
};

json config_echo(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["field"] = c.field;
  j["ambient"] = c.ambient;
  j["base"] = c.base;
  j["at"] = c.at;
  j["center"] = c.center;
  j["levels"] = c.levels;
  j["out"] = c.out;
  j["fields"] = c.fields;
  j["points"] = c.points;
  j["n"] = c.n;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["trials"] = c.trials;
  j["fd_step"] = c.fd_step ? json(*c.fd_step) : json(nullptr);
  j["which"] = c.which;
  j["a"] = c.a;
  j["a_prime"] = c.a_prime ? json(*c.a_prime) : json(nullptr);
  j["lambda_max"] = c.lambda_max;
  j["radial"] = c.radial;
  j["angular"] = c.angular;
  j["negate"] = c.negate;
  j["margin"] = c.margin;
  j["name"] = c.name;
  j["count"] = c.count;
  return j;
}

json tolerance_echo(const Tolerances& t) {
  return json{{"residual", t.residual},         {"fd_residual", t.fd_residual},
              {"identity", t.identity},         {"gap", t.gap},
              {"equality", t.equality},         {"regularity", t.regularity},
              {"level", t.level},               {"touch", t.touch},
              {"bisection", t.bisection},       {"gradient_bound", t.gradient_bound},
              {"scalar", t.scalar},             {"locus", t.locus},
              {"junction", t.junction},         {"min_order", t.min_order}};
}

VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::Parse, message); }

FieldPtr require_field(const RunConfig& c) {
  if (c.field.empty()) usage("this command needs --field");
  return parse_field(c.field);
}

SliceOptions slice_options(const RunConfig& c) {
  SliceOptions o;
  o.regularity = c.tol.regularity;
  o.level_tolerance = c.tol.level;
  return o;
}

int field_dimension(const ScalarField& field, const RunConfig& c) {
  if (auto d = field.dimension()) return *d;
  if (!c.at.empty()) return static_cast<int>(c.at.size());
  if (!c.center.empty()) return static_cast<int>(c.center.size());
  return c.n > 0 ? c.n : 2;
}

// Slice points of a user field: the --at point or ray samples per level.
std::vector<std::pair<double, VectorXd>> user_slice_points(const ScalarField& field, const RunConfig& c) {
  std::vector<std::pair<double, VectorXd>> out;
  if (!c.at.empty()) {
    const VectorXd x = to_vector(c.at);
    const double level = c.levels.empty() ? field.eval_value(x) : c.levels.front();
    out.emplace_back(level, x);
    return out;
  }
  if (c.levels.empty()) usage("pass --level or --at");
  const int n = field_dimension(field, c);
  RaySampling s;
  s.center = c.center.empty() ? VectorXd::Zero(n) : to_vector(c.center);
  s.rays = c.points;
  s.seed = c.seed;
  for (double level : c.levels)
    for (auto& x : sample_level_set(field, level, s)) out.emplace_back(level, std::move(x));
  return out;
}

SuiteConfig suite_config(const RunConfig& c) {
  SuiteConfig s;
  s.fields = c.fields;
  s.points = c.points;
  s.seed = c.seed;
  s.n_min = c.n > 0 ? c.n : c.n_min;
  s.n_max = c.n > 0 ? c.n : c.n_max;
  s.slice = slice_options(c);
  return s;
}

// --- point -----------------------------------------------------------------

int cmd_point(const RunConfig& c, Report& r) {
  const FieldPtr field = require_field(c);
  if (c.at.empty()) usage("point needs --at");
  const VectorXd x = to_vector(c.at);
  const MetricPtr base = parse_base(c.base);
  const AmbientSpec ambient = parse_ambient(c.ambient, base);
  const ExtrinsicPoint p = extrinsic_point(*field, *base, x);

  json j;
  j["x"] = to_json(x);
  j["u"] = p.u;
  j["gradient"] = to_json(p.du);
  j["grad_norm"] = p.grad_norm;
  j["normal"] = to_json(p.normal);
  j["shape"] = to_json(p.shape);
  j["mean_curvature"] = p.mean;
  j["norm_a2"] = p.norm_a2;
  j["principal"] = to_json(p.principal);
  j["scalar_curvature"] = p.scalar_curvature;
  j["base_scalar_curvature"] = p.base.scalar;
  r.columns = {"u", "grad_norm", "H", "norm_A2", "R"};
  std::vector<double> row{p.u, p.grad_norm, p.mean, p.norm_a2, p.scalar_curvature};
  if (!ambient.is_product()) {
    const ConformalExtrinsicPoint cp = conformal_point(*field, ambient, x);
    json cj;
    cj["phi"] = cp.phi;
    cj["phi_t"] = cp.phi_t;
    cj["mu"] = cp.mu;
    cj["shape"] = to_json(cp.shape);
    cj["mean_curvature"] = cp.mean;
    cj["norm_a2"] = cp.norm_a2;
    cj["principal"] = to_json(cp.principal);
    cj["scalar_curvature"] = cp.scalar_curvature ? number(*cp.scalar_curvature) : json(nullptr);
    r.columns.insert(r.columns.end(), {"phi", "mu", "H_bar", "norm_A2_bar"});
    row.insert(row.end(), {cp.phi, cp.mu, cp.mean, cp.norm_a2});
    if (ambient.is_round_sphere()) {
      cj["mean_curvature_direct"] = H_spherical(*field, x);
      r.columns.push_back("H_spherical");
      row.push_back(H_spherical(*field, x));
    }
    j["conformal"] = cj;
  }
  r.results.push_back(j);
  r.add_row(std::move(row));
  return kPass;
}

// --- slice -----------------------------------------------------------------

int cmd_slice(const RunConfig& c, Report& r) {
  const FieldPtr field = require_field(c);
  const MetricPtr base = parse_base(c.base);
  const int width = field_dimension(*field, c);
  r.columns = {"index", "level", "grad_norm", "cos_angle", "H_sigma", "minor_residual"};
  for (int i = 0; i < width; ++i) r.columns.push_back(fmt::format("x{}", i + 1));
  long index = 0, skipped = 0;
  double worst = 0.0;
  for (const auto& [level, x] : user_slice_points(*field, c)) {
    const SliceResult s = level_slice(*field, *base, level, x, slice_options(c));
    if (!s.frame) {
      ++skipped;
      continue;
    }
    const SliceFrame& f = *s.frame;
    const double residual = minor_relation_residual(f, extrinsic_point(*field, *base, x));
    worst = std::max(worst, residual);
    json j;
    j["index"] = index;
    j["level"] = level;
    j["x"] = to_json(x);
    j["eta"] = to_json(f.eta);
    j["grad_norm"] = f.grad_norm;
    j["cos_angle"] = f.cos_angle;
    j["normal_time_component"] = f.normal_time_component;
    j["shape_sigma"] = to_json(f.shape_sigma);
    j["mean_sigma"] = f.mean_sigma;
    j["minor"] = to_json(f.minor);
    j["minor_residual"] = residual;
    r.results.push_back(j);
    std::vector<double> row{static_cast<double>(index), level, f.grad_norm, f.cos_angle, f.mean_sigma, residual};
    append_padded(row, x, width);
    r.add_row(std::move(row));
    ++index;
  }
  r.summary = {{"points", index}, {"critical_points", skipped}, {"max_minor_residual", worst}};
  return kPass;
}

// --- verify ----------------------------------------------------------------

int cmd_identity(const RunConfig& c, Report& r) {
  const int lo = c.n > 0 ? c.n : c.n_min;
  const int hi = c.n > 0 ? c.n : std::max(c.n_max, lo);
  if (lo < 2) usage("identity needs n >= 2");
  if (c.trials < 1) usage("--trials must be positive");
  const auto s = syminv::run_identity_suite(c.trials, lo, hi, c.seed);
  const bool pass = s.max_relative_residual <= c.tol.identity;
  json j{{"trials", s.trials},
         {"n_min", s.n_min},
         {"n_max", s.n_max},
         {"max_relative_residual", s.max_relative_residual},
         {"max_abs_residual", s.max_abs_residual},
         {"worst_trial", s.worst_trial},
         {"worst_n", s.worst_n},
         {"sign_condition_trials", s.sign_condition_trials},
         {"min_scaled_gap", s.min_scaled_gap},
         {"pass", pass}};
  r.results.push_back(j);
  r.summary = {{"pass", pass}, {"max_relative_residual", s.max_relative_residual}};
  r.columns = {"trials", "n_min", "n_max", "max_relative_residual", "max_abs_residual", "worst_trial",
               "sign_condition_trials", "min_scaled_gap"};
  r.add_row({static_cast<double>(s.trials), static_cast<double>(s.n_min), static_cast<double>(s.n_max),
             s.max_relative_residual, s.max_abs_residual, static_cast<double>(s.worst_trial),
             static_cast<double>(s.sign_condition_trials), s.min_scaled_gap});
  return pass ? kPass : kViolation;
}

void emit_residuals(Report& r, const ResidualSuiteResult& s, int width) {
  r.columns = {"field", "level", "residual"};
  for (int i = 0; i < width; ++i) r.columns.push_back(fmt::format("x{}", i + 1));
  for (const auto& p : s.points) {
    r.results.push_back({{"field", p.field}, {"level", p.level}, {"x", to_json(p.x)}, {"residual", p.residual}});
    std::vector<double> row{static_cast<double>(p.field), p.level, p.residual};
    append_padded(row, p.x, width);
    r.add_row(std::move(row));
  }
}

int cmd_minor(const RunConfig& c, Report& r) {
  const MetricPtr base = parse_base(c.base);
  const double tol = c.fd_step ? c.tol.fd_residual : c.tol.residual;
  bool pass = true;
  if (!c.field.empty()) {
    FieldPtr field = parse_field(c.field);
    const auto points = user_slice_points(*field, c);
    if (c.fd_step) field = std::make_shared<FiniteDifferenceField>(field, *c.fd_step);
    const bool fd_tol = c.fd_step || field->mode() != JetMode::Analytic;
    ResidualSuiteResult s;
    for (const auto& [level, x] : points) {
      const SliceFrame f = regular_slice(*field, *base, level, x, slice_options(c));
      const double res = minor_relation_residual(f, extrinsic_point(*field, *base, x));
      s.points.push_back({0, x, level, res});
      s.max_residual = std::max(s.max_residual, res);
      ++s.evaluated;
    }
    const double limit = fd_tol ? c.tol.fd_residual : c.tol.residual;
    pass = s.max_residual <= limit;
    emit_residuals(r, s, field_dimension(*field, c));
    r.summary = {{"points", s.evaluated}, {"max_residual", s.max_residual}, {"tolerance", limit}, {"pass", pass}};
    return pass ? kPass : kViolation;
  }

  const SuiteConfig sc = suite_config(c);
  const auto s = run_minor_suite(sc, *base, c.fd_step);
  pass = s.max_residual <= tol;
  emit_residuals(r, s, sc.n_max);
  r.summary = {{"fields", sc.fields},   {"points_per_field", sc.points}, {"evaluated", s.evaluated},
               {"skipped", s.skipped},  {"max_residual", s.max_residual}, {"tolerance", tol}};
  if (c.fd_step && s.worst) {
    const auto draws = draw_fields(sc.fields, sc.n_min, sc.n_max, sc.seed);
    const auto& d = draws[static_cast<std::size_t>(s.worst->field)];
    const auto conv = minor_fd_convergence(std::make_shared<RandomAnalyticField>(d.seed, d.n), *base, d.level,
                                           s.worst->x, *c.fd_step);
    const double min_order = *std::min_element(conv.orders.begin(), conv.orders.end());
    r.summary["convergence"] = {{"steps", conv.steps},
                                {"residuals", conv.residuals},
                                {"orders", conv.orders},
                                {"min_order", min_order},
                                {"required_order", c.tol.min_order}};
    pass = pass && min_order >= c.tol.min_order;
  }
  r.summary["pass"] = pass;
  return pass ? kPass : kViolation;
}

json inequality_json(int field, const InequalityReport& rep) {
  return {{"field", field},
          {"which", std::string(to_string(rep.which))},
          {"x", to_json(rep.x)},
          {"level", rep.level},
          {"lhs", rep.lhs},
          {"rhs", rep.rhs},
          {"gap", rep.gap},
          {"decomposition_gap", rep.decomposition_gap},
          {"umbilicity_deviation", rep.umbilicity_deviation},
          {"umbilicity_threshold", rep.umbilicity_threshold},
          {"multiplicity_diagnostic", rep.multiplicity_diagnostic},
          {"multiplicity_threshold", rep.multiplicity_threshold},
          {"kappa", rep.kappa},
          {"predicted_eigenvalue", rep.predicted_eigenvalue},
          {"equality_detected", rep.equality_detected}};
}

std::vector<double> inequality_row(int field, const InequalityReport& rep, int width) {
  std::vector<double> row{static_cast<double>(field), rep.level, rep.lhs, rep.rhs, rep.gap,
                          rep.umbilicity_deviation, rep.multiplicity_diagnostic,
                          rep.equality_detected ? 1.0 : 0.0};
  append_padded(row, rep.x, width);
  return row;
}

int cmd_inequality(const RunConfig& c, Report& r) {
  const InequalityKind which = parse_inequality_kind(c.which);
  const MetricPtr base = parse_base(c.base);
  const std::string ambient_name =
      which == InequalityKind::Sphere ? "spherical" : (which == InequalityKind::Phi && c.ambient == "flat" ? "spherical" : c.ambient);
  const AmbientSpec ambient = parse_ambient(ambient_name, base);
  const SliceOptions so = slice_options(c);
  EqualityThresholds th;
  th.relative = c.tol.equality;

  r.columns = {"field", "level", "lhs", "rhs", "gap", "umbilicity_deviation", "multiplicity_diagnostic", "equality"};
  long evaluated = 0, violations = 0, equalities = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  int width = c.n_max;
  std::vector<std::pair<int, InequalityReport>> reports;

  if (!c.field.empty()) {
    const FieldPtr field = parse_field(c.field);
    width = field_dimension(*field, c);
    for (const auto& [level, x] : user_slice_points(*field, c)) {
      switch (which) {
        case InequalityKind::Prod: reports.emplace_back(0, check_prod(*field, *base, level, x, so, th)); break;
        case InequalityKind::Phi: reports.emplace_back(0, check_phi(*field, ambient, level, x, so, th)); break;
        case InequalityKind::Euclid: reports.emplace_back(0, check_euclid(*field, level, x, so, th)); break;
        case InequalityKind::Sphere: reports.emplace_back(0, check_sphere(*field, level, x, so, th)); break;
      }
    }
  } else {
    const SuiteConfig sc = suite_config(c);
    width = sc.n_max;
    auto s = run_inequality_suite(which, sc, ambient, c.tol.gap);
    r.summary["skipped"] = s.skipped;
    r.summary["max_decomposition_mismatch"] = s.max_decomposition_mismatch;
    reports = std::move(s.reports);
  }
  for (const auto& [f, rep] : reports) {
    ++evaluated;
    min_gap = std::min(min_gap, rep.gap);
    if (rep.gap < -c.tol.gap) ++violations;
    if (rep.equality_detected) ++equalities;
    r.results.push_back(inequality_json(f, rep));
    r.add_row(inequality_row(f, rep, width));
  }
  r.summary["which"] = std::string(to_string(which));
  r.summary["ambient"] = ambient.describe();
  r.summary["evaluated"] = evaluated;
  r.summary["min_gap"] = evaluated ? number(min_gap) : json(nullptr);
  r.summary["violations"] = violations;
  r.summary["equality_detected"] = equalities;
  r.summary["tolerance"] = c.tol.gap;
  r.summary["pass"] = violations == 0;
  return violations == 0 ? kPass : kViolation;
}

// --- barrier ---------------------------------------------------------------

int cmd_barrier(const RunConfig& c, Report& r) {
  FieldPtr field = require_field(c);
  if (c.negate) field = std::make_shared<ScaledField>(-1.0, field);
  const int n = field_dimension(*field, c);
  const double a = c.a;
  const double a_prime = c.a_prime.value_or(a + 0.1 * (1.0 - a));
  BarrierOptions o;
  o.bisection_tolerance = c.tol.bisection;
  o.touch_tolerance = c.tol.touch;
  o.sampling.radial = c.radial;
  o.sampling.angular = c.angular;
  o.sampling.seed = c.seed;
  const BarrierRun run = slide(*field, n, a, a_prime, c.lambda_max, o);

  json j{{"field", run.field},
         {"n", run.n},
         {"a", run.a},
         {"a_prime", run.a_prime},
         {"lambda_max", run.lambda_max},
         {"lambda_sampled", run.lambda_sampled},
         {"lambda_star", run.lambda_star},
         {"outcome", std::string(to_string(run.outcome))},
         {"x0", to_json(run.x0)},
         {"u0", run.u0},
         {"grad_norm", run.grad_norm},
         {"radial_derivative", run.radial_derivative},
         {"max_excess", run.max_excess},
         {"samples", run.samples},
         {"bisection_steps", run.bisection_steps},
         {"newton_steps", run.newton_steps}};
  bool pass = true;
  if (run.successful()) {
    const bool gradient_bound = run.grad_norm >= std::abs(run.radial_derivative) - c.tol.gradient_bound &&
                                std::abs(run.radial_derivative) >= run.lambda_star - c.tol.gradient_bound;
    j["gradient_bound"] = gradient_bound;
    pass = gradient_bound;
  }
  if (run.outcome != SlideOutcome::Degenerate && run.grad_norm >= c.tol.regularity) {
    const ComparisonBounds b = comparison_bounds(run, c.margin, c.tol.regularity);
    j["bounds"] = {{"upper", b.upper},
                   {"upper_cap", b.upper_cap},
                   {"lower", b.lower},
                   {"ordering_checked", b.ordering_checked},
                   {"ordering_holds", b.ordering_holds}};
    if (run.successful()) pass = pass && b.ordering_holds;
  }
  j["pass"] = pass;
  r.results.push_back(j);
  r.summary = {{"outcome", std::string(to_string(run.outcome))}, {"pass", pass}};
  r.columns = {"lambda_star", "lambda_sampled", "u0", "grad_norm", "radial_derivative", "outcome"};
  std::vector<double> row{run.lambda_star, run.lambda_sampled, run.u0, run.grad_norm, run.radial_derivative,
                          static_cast<double>(static_cast<int>(run.outcome))};
  for (int i = 0; i < n; ++i) r.columns.push_back(fmt::format("x{}", i + 1));
  append_padded(row, run.x0, n);
  r.add_row(std::move(row));
  return pass ? kPass : kViolation;
}

// --- example ---------------------------------------------------------------

int cmd_spherical_glued(const RunConfig& c, Report& r) {
  const double a = c.a;
  const auto rows = spherical_glued_sweep(a, c.count);
  double min_r = std::numeric_limits<double>::infinity();
  double min_r_at = 0.0;
  double locus_distance = 0.0;
  r.columns = {"piece", "r", "value", "lambda1", "lambda2", "R"};
  for (const auto& row : rows) {
    if (row.piece == 0) {
      if (row.scalar < min_r) {
        min_r = row.scalar;
        min_r_at = row.r;
      }
      if (row.scalar - 2.0 <= c.tol.scalar) locus_distance = std::max(locus_distance, std::abs(row.r - a));
    }
    r.results.push_back({{"piece", row.piece},
                         {"r", row.r},
                         {"value", row.value},
                         {"lambda1", row.lambda1},
                         {"lambda2", row.lambda2},
                         {"R", row.scalar}});
    r.add_row({static_cast<double>(row.piece), row.r, row.value, row.lambda1, row.lambda2, row.scalar});
  }
  const auto mono = monotonicity_checks(a, profile_grid(a, c.count));
  const auto junction = junction_c2_check(a, junction_radii(), c.tol.junction);
  const bool scalar_ok = min_r >= 2.0 - c.tol.scalar;
  const bool locus_ok = locus_distance <= c.tol.locus;
  const bool pass = scalar_ok && locus_ok && mono.all() && junction.pass;
  r.summary = {{"a", a},
               {"min_R_u", min_r},
               {"min_R_at", min_r_at},
               {"equality_locus_distance", locus_distance},
               {"cap_curvature", cap_curvature(a)},
               {"cap_R", cap_scalar_curvature(a)},
               {"monotonicity",
                {{"u_at_a", mono.value_at_a},
                 {"du_at_a", mono.slope_at_a},
                 {"min_du", mono.min_slope},
                 {"min_second_order_margin", mono.min_second_order_margin},
                 {"second_order_margin_at_a", mono.second_order_margin_at_a},
                 {"min_lambda1", mono.min_lambda1},
                 {"pass", mono.all()}}},
               {"junction",
                {{"radii", junction.radii},
                 {"value_limit", junction.value_limit},
                 {"lambda1_limit", junction.lambda1_limit},
                 {"lambda2_limit", junction.lambda2_limit},
                 {"cap_value", junction.cap_value},
                 {"sign_map", junction.sign_map},
                 {"tolerance", junction.tolerance},
                 {"pass", junction.pass}}},
               {"pass", pass}};
  return pass ? kPass : kViolation;
}

int cmd_euclid_cone(const RunConfig& c, Report& r) {
  const auto rows = euclid_cone_sweep(c.count);
  double min_k = std::numeric_limits<double>::infinity();
  r.columns = {"z", "f", "K", "R"};
  for (const auto& row : rows) {
    min_k = std::min(min_k, row.gauss);
    r.results.push_back({{"z", row.z}, {"f", row.f}, {"K", row.gauss}, {"R", row.scalar}});
    r.add_row({row.z, row.f, row.gauss, row.scalar});
  }
  const auto profile = RevolutionProfile::euclid_f();
  const ProfileJet at0 = profile_jet(profile, 0.0);
  const ProfileJet at1 = profile_jet(profile, 1.0);
  const bool pass = min_k >= -c.tol.scalar && at0.value == 1.0 && at1.value == 0.0 && at0.singular;
  r.summary = {{"min_K", min_k},
               {"f_at_0", at0.value},
               {"f_at_1", at1.value},
               {"vertical_tangent_at_0", at0.singular},
               {"pass", pass}};
  return pass ? kPass : kViolation;
}

int cmd_example(const RunConfig& c, Report& r) {
  if (c.count < 2) usage("--count must be at least 2");
  if (c.name == "spherical-glued") return cmd_spherical_glued(c, r);
  if (c.name == "euclid-cone") return cmd_euclid_cone(c, r);
  usage(fmt::format("unknown example '{}'", c.name));
}

void add_tolerance(CLI::App& app, const std::string& flag, double& target, const std::string& help) {
  app.add_option(flag, target, help)
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            try {
              v = std::stod(s);
            } catch (const std::exception&) {
              return "not a number";
            }
            return v >= kMinTolerance ? std::string{} : fmt::format("tolerance below {}", kMinTolerance);
          },
          "TOL>=1e-14"))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Curvature of graphs, their level-set slices and the slice inequalities", "curv"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  app.add_option("--field", c.field, "Field spec");
  app.add_option("--ambient", c.ambient, "flat | spherical | conformal:const:c | conformal:exp:k")
      ->capture_default_str();
  app.add_option("--base", c.base, "flat | round | round-fd")->capture_default_str();
  app.add_option("--at", c.at, "Point, comma separated")->delimiter(',');
  app.add_option("--center", c.center, "Ray sampling center")->delimiter(',');
  app.add_option("--level,--levels", c.levels, "Slice levels")->delimiter(',');
  app.add_option("--out", c.out, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--output", c.output, "Report file (default: stdout)");
  app.add_option("--seed", c.seed, "Seed")->capture_default_str();
  app.add_option("--fields", c.fields, "Random fields per suite")->check(CLI::Range(1, 100000))->capture_default_str();
  app.add_option("--points", c.points, "Points per field or level")->check(CLI::Range(1, 100000))->capture_default_str();
  app.add_option("--n", c.n, "Dimension")->check(CLI::Range(0, 16));
  app.add_option("--n-min", c.n_min, "Smallest dimension")->check(CLI::Range(2, 16))->capture_default_str();
  app.add_option("--n-max", c.n_max, "Largest dimension")->check(CLI::Range(2, 16))->capture_default_str();
  app.add_option("--trials", c.trials, "Identity trials")->capture_default_str();
  app.add_option("--fd-step", c.fd_step, "Finite-difference step")->check(CLI::PositiveNumber);
  app.add_option("--which", c.which, "prod | phi | euclid | sphere")
      ->check(CLI::IsMember({"prod", "phi", "euclid", "sphere"}))
      ->capture_default_str();
  app.add_option("--a", c.a, "Inner radius / profile parameter")->capture_default_str();
  app.add_option("--a-prime", c.a_prime, "Shrunken inner radius");
  app.add_option("--lambda-max", c.lambda_max, "Starting barrier slope")->capture_default_str();
  app.add_option("--radial", c.radial, "Radial barrier samples")->capture_default_str();
  app.add_option("--angular", c.angular, "Angular barrier samples")->capture_default_str();
  app.add_flag("--negate", c.negate, "Slide against -u");
  app.add_option("--margin", c.margin, "Skip bound ordering within this distance of |x0| = 1")->capture_default_str();
  app.add_option("--name", c.name, "euclid-cone | spherical-glued");
  app.add_option("--count", c.count, "Sweep points")->capture_default_str();
  add_tolerance(app, "--tol-residual", c.tol.residual, "Analytic residual tolerance");
  add_tolerance(app, "--tol-fd-residual", c.tol.fd_residual, "Finite-difference residual tolerance");
  add_tolerance(app, "--tol-identity", c.tol.identity, "Relative identity residual tolerance");
  add_tolerance(app, "--tol-gap", c.tol.gap, "Allowed negative gap");
  add_tolerance(app, "--tol-equality", c.tol.equality, "Relative equality threshold");
  add_tolerance(app, "--tol-regularity", c.tol.regularity, "Smallest regular |grad u|");
  add_tolerance(app, "--tol-level", c.tol.level, "Allowed |u - level|");
  add_tolerance(app, "--tol-touch", c.tol.touch, "Barrier touch tolerance");
  add_tolerance(app, "--tol-bisection", c.tol.bisection, "Barrier bisection tolerance");
  add_tolerance(app, "--tol-gradient-bound", c.tol.gradient_bound, "Slack in |Du| >= lambda");
  add_tolerance(app, "--tol-scalar", c.tol.scalar, "Slack in curvature lower bounds");
  add_tolerance(app, "--tol-locus", c.tol.locus, "Equality locus distance");
  add_tolerance(app, "--tol-junction", c.tol.junction, "Junction limit tolerance");

  auto* point = app.add_subcommand("point", "Extrinsic and conformal data at a point");
  auto* slice_cmd = app.add_subcommand("slice", "Slice frames along level sets");
  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);
  auto* identity = verify->add_subcommand("identity", "Randomized trace identity");
  auto* minor = verify->add_subcommand("minor", "Minor relation residuals");
  auto* inequality = verify->add_subcommand("inequality", "Slice inequality gaps");
  auto* barrier = app.add_subcommand("barrier", "Cone barrier slide and comparison bounds");
  auto* example = app.add_subcommand("example", "Rotation examples and sweep data");
  for (auto* sub : {point, slice_cmd, verify, identity, minor, inequality, barrier, example}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kPass : kUsage;
  }

  using Handler = int (*)(const RunConfig&, Report&);
  Handler handler = nullptr;
  if (point->parsed()) {
    c.command = "point";
    handler = cmd_point;
  } else if (slice_cmd->parsed()) {
    c.command = "slice";
    handler = cmd_slice;
  } else if (identity->parsed()) {
    c.command = "verify identity";
    handler = cmd_identity;
  } else if (minor->parsed()) {
    c.command = "verify minor";
    handler = cmd_minor;
  } else if (inequality->parsed()) {
    c.command = "verify inequality";
    handler = cmd_inequality;
  } else if (barrier->parsed()) {
    c.command = "barrier";
    handler = cmd_barrier;
  } else {
    c.command = "example";
    handler = cmd_example;
  }

  Report report;
  report.meta = {{"tool", "curv"},
                 {"version", std::string(kVersion)},
                 {"command", c.command},
                 {"config", config_echo(c)},
                 {"tolerances", tolerance_echo(c.tol)},
                 {"seed", c.seed}};
  int code = kPass;
  try {
    if (c.n_max < c.n_min) usage("--n-max must be at least --n-min");
    code = handler(c, report);
  } catch (const Error& e) {
    err << "curv: " << e.what() << '\n';
    return kUsage;
  }

  auto emit = [&](std::ostream& os) {
    if (c.out == "csv")
      report.write_csv(os);
    else
      report.write_json(os);
  };
  if (c.output.empty()) {
    emit(out);
  } else {
    std::ofstream file(c.output, std::ios::binary);
    if (!file) {
      err << "curv: cannot write " << c.output << '\n';
      return kUsage;
    }
    emit(file);
    if (c.out == "csv") {
      // CSV carries numbers only; the metadata goes to a sidecar file.
      std::ofstream meta(c.output + ".meta.json", std::ios::binary);
      Report sidecar;
      sidecar.meta = report.meta;
      sidecar.summary = report.summary;
      sidecar.write_json(meta);
    }
  }
  if (code == kViolation) err << "curv: violation found; see the report\n";
  return code;
}

}  // namespace curvkit::cli
