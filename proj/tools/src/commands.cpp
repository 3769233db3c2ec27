#include "tension2d_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include <Eigen/Core>

#include "tension2d/potentials.hpp"
#include "tension2d/spectra.hpp"
#include "tension2d/tension.hpp"

#ifndef TENSION2D_VERSION
#define TENSION2D_VERSION "unknown"
#endif

namespace tension2d::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void stamp(ResultBundle& b, const std::string& command, const RunConfig& config) {
  b.summary["command"] = command;
  b.summary["version"] = TENSION2D_VERSION;
  b.summary["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                               std::to_string(EIGEN_MAJOR_VERSION) + "." +
                               std::to_string(EIGEN_MINOR_VERSION);
  b.summary["preset"] = config.preset;
  b.summary["n"] = config.n;
}

// JSON has no NaN; report it as null.
nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

bool is_unit_circle(const ClosedCurve& c) {
  const auto ref = circle(c.grid());
  double d = 0.0;
  for (int j = 0; j < c.size(); ++j) d = std::max(d, (c.position()[j] - ref.position()[j]).norm());
  return d <= 1e-12;
}

const PerturbationSpec* perturbation(const RunConfig& config) {
  return config.curve ? std::get_if<PerturbationSpec>(&*config.curve) : nullptr;
}

}  // namespace

bool ResultBundle::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ResultBundle cmd_solve(const RunConfig& config) {
  const auto t0 = Clock::now();
  const ClosedCurve curve = build_config_curve(config);
  const PeriodicGrid& grid = curve.grid();
  const ForceDensity force = build_config_force(config, grid);
  const TensionSolution sol = tension::solve_tension(curve, force, config.mode);

  ResultBundle b;
  stamp(b, "solve", config);
  b.summary["curve_type"] = config.curve_type();
  b.summary["force_type"] = config.force_type();
  b.summary["requested_mode"] = to_string(config.mode);
  b.summary["mode"] = to_string(sol.mode);
  b.summary["length"] = curve.length();
  b.summary["enclosed_area"] = curve.signed_area();
  b.summary["sigma_max_abs"] = sol.sigma.max_abs();
  b.summary["sigma_mean"] = sol.sigma.mean();
  double umax = 0.0;
  for (int j = 0; j < grid.size(); ++j) umax = std::max(umax, sol.interface_velocity[j].norm());
  b.summary["velocity_max_abs"] = umax;
  b.summary["residual_inext"] = sol.residual_inext;
  b.summary["condition_estimate"] = sol.condition_estimate;
  b.summary["ill_conditioned"] = sol.ill_conditioned;
  b.summary["constraint_multiplier"] = sol.constraint_multiplier;
  std::string warnings;
  for (const auto& w : sol.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
  b.summary["warnings"] = warnings;

  if (config.force && std::holds_alternative<PresetForce>(*config.force) && is_unit_circle(curve)) {
    double es = 0.0, eu = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      const double t = grid.node(j);
      es = std::max(es, std::abs(sol.sigma[j] - std::sin(t)));
      eu = std::max(eu, (sol.interface_velocity[j] - Vec2(-2.0 * std::sin(t), 2.0 * std::cos(t)))
                            .cwiseAbs()
                            .maxCoeff());
    }
    b.summary["sigma_error_inf"] = es;
    b.summary["velocity_error_inf"] = eu;
  }

  const VectorGridFunction du = spectral::fourier_derivative(sol.interface_velocity);
  Table sigma{"sigma.csv", {"theta", "sigma"}, {}};
  Table velocity{"velocity.csv", {"theta", "u1", "u2"}, {}};
  Table residual{"residuals.csv", {"theta", "tau_dot_du"}, {}};
  for (int j = 0; j < grid.size(); ++j) {
    const double t = grid.node(j);
    sigma.rows.push_back({t, sol.sigma[j]});
    velocity.rows.push_back({t, sol.interface_velocity[j].x(), sol.interface_velocity[j].y()});
    residual.rows.push_back({t, curve.tangent()[j].dot(du[j])});
  }
  b.tables = {std::move(sigma), std::move(velocity), std::move(residual)};

  if (!config.probe_points.empty()) {
    // The flow is generated by the total interfacial force F + d(sigma tau).
    const VectorGridFunction total = force.samples(grid) + tension::tension_force(curve, sol.sigma);
    Table fields{"fields.csv", {"x", "y", "u1", "u2", "pressure", "s11", "s12", "s21", "s22"}, {}};
    for (const Vec2& p : config.probe_points) {
      const FieldSample s = potentials::evaluate_field(curve, total, p);
      fields.rows.push_back({p.x(), p.y(), s.velocity.x(), s.velocity.y(), s.pressure, s.stress(0, 0),
                             s.stress(0, 1), s.stress(1, 0), s.stress(1, 1)});
    }
    b.tables.push_back(std::move(fields));
  }
  b.summary["probe_points"] = config.probe_points.size();
  b.summary["elapsed_seconds"] = seconds_since(t0);
  return b;
}

ResultBundle cmd_eig(const RunConfig& config) {
  const auto t0 = Clock::now();
  const ClosedCurve curve = build_config_curve(config);
  const PerturbationSpec* shape = perturbation(config);
  const double eps = shape ? shape->epsilon : 0.0;
  const SpectrumReport r = spectra::spectrum(curve, eps);

  ResultBundle b;
  stamp(b, "eig", config);
  b.summary["curve_type"] = config.curve_type();
  b.summary["epsilon"] = eps;
  b.summary["leading"] = r.leading;
  b.summary["second"] = r.eigenvalues.size() > 1 ? r.eigenvalues[1] : 0.0;
  b.summary["smallest"] = r.eigenvalues.back();
  b.summary["asymmetry"] = r.asymmetry;
  b.summary["eigenvalue_count"] = r.eigenvalues.size();
  if (shape) {
    b.summary["lambda2_predicted"] = spectra::lambda2(*shape);
    b.summary["leading_over_eps2"] = number_or_null(eps != 0.0 ? r.leading / (eps * eps) : NAN);
    b.summary["leading_over_eps4"] = number_or_null(eps != 0.0 ? r.leading / std::pow(eps, 4) : NAN);
  }
  Table t{"spectrum.csv", {"index", "eigenvalue"}, {}};
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), r.eigenvalues[i]});
  }
  b.tables.push_back(std::move(t));
  b.summary["elapsed_seconds"] = seconds_since(t0);
  return b;
}

ResultBundle cmd_sweep(const RunConfig& config, int threads) {
  const auto t0 = Clock::now();
  const PerturbationSpec* shape = perturbation(config);
  if (!config.curve) throw ConfigError(config.source, 0, "curve", "missing curve specification");
  if (!shape) throw ConfigError(config.source, 0, "curve", "sweep needs a perturbed_circle curve");
  if (config.epsilons.empty()) throw ConfigError(config.source, 0, "epsilons", "empty epsilon list");
  for (double e : config.epsilons) {
    if (!(e > 0.0)) throw ConfigError(config.source, 0, "epsilons", "values must be strictly positive");
  }
  validate_n(config, config.n);
  const SweepResult s = spectra::eigenvalue_sweep(*shape, config.epsilons, config.n, {threads, 3});

  ResultBundle b;
  stamp(b, "sweep", config);
  b.summary["epsilon_count"] = s.rows.size();
  b.summary["lambda2_predicted"] = spectra::lambda2(*shape);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double l2 = s.fit ? s.fit->lambda2 : nan;
  const double l3 = s.fit ? s.fit->lambda3 : nan;
  b.summary["fitted_lambda2"] = number_or_null(l2);
  b.summary["fitted_lambda3"] = number_or_null(l3);
  b.summary["fit_points"] = s.fit ? s.fit->points : 0;

  Table t{"lambda.csv",
          {"epsilon", "lambda", "lambda_over_eps2", "lambda_over_eps4", "fitted_lambda2", "fitted_lambda3"},
          {}};
  for (const auto& row : s.rows) {
    t.rows.push_back({row.epsilon, row.lambda, row.lambda_over_eps2, row.lambda_over_eps4, l2, l3});
  }
  b.tables.push_back(std::move(t));
  b.summary["elapsed_seconds"] = seconds_since(t0);
  return b;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_bundle(const ResultBundle& bundle, const std::string& dir, const RunConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError(config.source, 0, "out", "cannot create output directory '" + dir + "'");
  }
  auto write = [&](const std::string& name, const std::string& text) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw ConfigError(config.source, 0, "out", "cannot write '" + path.string() + "'");
  };
  if (config.wants(Format::Csv)) {
    for (const auto& t : bundle.tables) write(t.name, to_csv(t));
    if (!bundle.checks.empty()) {
      std::string csv = "name,residual,tolerance,pass\n";
      char buf[128];
      for (const auto& c : bundle.checks) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%d\n", c.residual, c.tolerance, c.pass ? 1 : 0);
        csv += c.name + buf;
      }
      write("checks.csv", csv);
    }
  }
  if (config.wants(Format::Json)) {
    nlohmann::ordered_json j = bundle.summary;
    if (!bundle.checks.empty()) {
      auto& arr = j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : bundle.checks) {
        arr.push_back({{"name", c.name},
                       {"residual", number_or_null(c.residual)},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
      }
    }
    write(bundle.summary_name, j.dump(2) + "\n");
  }
}

}  // namespace tension2d::cli
