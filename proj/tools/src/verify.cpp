// The `verify` suite: closed forms, exact identities and convergence studies,
// each reported as (name, residual, tolerance, pass).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "tension2d/oracles.hpp"
#include "tension2d/potentials.hpp"
#include "tension2d/spectra.hpp"
#include "tension2d/tension.hpp"
#include "tension2d_cli/commands.hpp"

#ifndef TENSION2D_VERSION
#define TENSION2D_VERSION "unknown"
#endif

namespace tension2d::cli {

namespace {

class Suite {
 public:
  void add(const std::string& name, double residual, double tolerance) {
    checks_.push_back({name, residual, tolerance, std::isfinite(residual) && residual <= tolerance});
  }
  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::vector<Check> checks_;
};

FrameFourierForce table1() { return {{4.0}, {0.0, 1.0}, {4.0, -1.0}, {}}; }

GridFunction random_trig(const PeriodicGrid& g, int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(modes + 1), b(modes + 1);
  for (int k = 0; k <= modes; ++k) a[k] = u(rng), b[k] = u(rng);
  return GridFunction::sample(g, [&](double t) {
    double v = a[0];
    for (int k = 1; k <= modes; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    return v;
  });
}

VectorGridFunction random_vec(const PeriodicGrid& g, int modes, std::mt19937_64& rng) {
  auto x = random_trig(g, modes, rng);
  auto y = random_trig(g, modes, rng);
  return {x, y};
}

// Mode-n amplitudes shrink like 1/n so the curve stays resolved at 64 nodes.
PerturbationSpec random_shape(std::mt19937_64& rng, int modes, double eps) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PerturbationSpec s;
  s.g0 = u(rng);
  for (int n = 1; n <= modes; ++n) {
    s.g_cos.push_back(u(rng) / n);
    s.g_sin.push_back(u(rng) / n);
  }
  s.epsilon = eps;
  return s;
}

FrameFourierForce random_frame(std::mt19937_64& rng, int n_max) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FrameFourierForce f;
  for (auto* v : {&f.a, &f.b, &f.c, &f.d}) {
    v->resize(n_max + 1);
    for (auto& x : *v) x = u(rng);
  }
  f.b[0] = f.d[0] = 0.0;
  return f;
}

double max_norm(const VectorGridFunction& v) {
  double m = 0.0;
  for (int j = 0; j < v.size(); ++j) m = std::max(m, v[j].norm());
  return m;
}

// Residual of each trig table relative to the size of the expected values,
// so a sign flip of the transform reads as 2.
void hilbert_checks(Suite& s, const PeriodicGrid& g, const oracles::HilbertFn& hilbert) {
  const auto ids = oracles::hilbert_identities();
  const auto res = oracles::hilbert_residuals(g, hilbert);
  double worst[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < res.size(); ++i) {
    double scale = 0.0;
    for (int j = 0; j < g.size(); ++j) scale = std::max(scale, ids[i].expected(g.node(j)).norm());
    const double r = scale > 0.0 ? res[i].residual / scale : res[i].residual;
    double& w = worst[res[i].table == "hilbert_01" ? 0 : 1];
    w = std::max(w, r);
  }
  s.add("hilbert_01", worst[0], 1e-10);
  s.add("hilbert_02", worst[1], 1e-10);
}

void quick_checks(Suite& s, std::mt19937_64& rng, const oracles::HilbertFn& hilbert) {
  const PeriodicGrid g(64);
  const ClosedCurve unit = circle(g);
  const ClosedCurve ell = ellipse(g, 1.5, 1.0 / 1.5);

  hilbert_checks(s, g, hilbert);

  double toland = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto sides = oracles::toland_check(random_trig(g, 6, rng));
    toland = std::max(toland, (sides.lhs - sides.rhs).max_abs());
  }
  s.add("toland_identity", toland, 1e-9);

  {
    const auto f = GridFunction::sample(g, [](double t) { return std::sin(3 * t) + std::cos(5 * t); });
    const auto df = GridFunction::sample(g, [](double t) { return 3 * std::cos(3 * t) - 5 * std::sin(5 * t); });
    s.add("derivative_exact", (spectral::fourier_derivative(f) - df).max_abs(), 1e-12);
    const auto r = random_trig(g, 20, rng);
    const auto hh = spectral::hilbert_transform(spectral::hilbert_transform(r));
    s.add("hilbert_square", (hh + r - GridFunction::constant(g, r.mean())).max_abs(), 1e-12);
  }

  double q0 = 0.0;
  for (int n = 0; n <= 8; ++n) {
    for (int part = 0; part < 4; ++part) {
      if (n == 0 && (part == 1 || part == 3)) continue;
      FrameFourierForce f;
      auto& v = part == 0 ? f.a : part == 1 ? f.b : part == 2 ? f.c : f.d;
      v.assign(n + 1, 0.0);
      v[n] = 1.0;
      const auto samples = f.evaluate(g);
      q0 = std::max(q0, (tension::apply_Q(unit, samples) - oracles::Q0_closed_form(samples)).max_abs());
    }
  }
  s.add("q0_closed_form", q0, 1e-10);

  double split_c = 0.0, split_e = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_vec(g, 12, rng);
    split_c = std::max(split_c, (oracles::split_Q_check(unit, f) - tension::apply_Q(unit, f)).max_abs());
    split_e = std::max(split_e, (oracles::split_Q_check(ell, f) - tension::apply_Q(ell, f)).max_abs());
  }
  s.add("split_q_circle", split_c, 1e-8);
  s.add("split_q_ellipse", split_e, 1e-8);

  double sig = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_frame(rng, 8);
    const auto sol = tension::solve_tension(unit, ForceDensity(f), SolveMode::MeanZero);
    sig = std::max(sig, (sol.sigma - oracles::circle_sigma(f, g)).max_abs());
  }
  s.add("circle_sigma_vs_solve", sig, 1e-10);

  {
    const PeriodicGrid g32(32);
    const auto sol = tension::solve_tension(circle(g32), ForceDensity(table1()), SolveMode::MeanZero);
    double es = 0.0, eu = 0.0;
    for (int j = 0; j < g32.size(); ++j) {
      const double t = g32.node(j);
      es = std::max(es, std::abs(sol.sigma[j] - std::sin(t)));
      eu = std::max(eu, (sol.interface_velocity[j] - Vec2(-2 * std::sin(t), 2 * std::cos(t))).norm());
    }
    s.add("table1_sigma", es, 1e-10);
    s.add("table1_velocity", eu, 1e-10);
  }

  {
    const auto r = spectra::spectrum(unit);
    double worst = std::abs(r.leading);
    for (int n = 1; n <= 20; ++n) {
      std::vector<double> d;
      for (double v : r.eigenvalues) d.push_back(std::abs(v + n / 4.0));
      std::nth_element(d.begin(), d.begin() + 1, d.end());
      worst = std::max(worst, d[1]);
    }
    s.add("circle_spectrum", worst, 1e-8);
    const auto v = spectra::nullspace_vector(unit);
    s.add("circle_nullspace", (v - GridFunction::constant(g, 1.0)).max_abs(), 1e-8);
  }

  double q_int = 0.0, s_dtau = 0.0;
  for (double radius : {1.0, 0.6, 2.5}) {
    const auto c = circle(g, radius, Vec2(0.2, 0.1));
    q_int = std::max(q_int, std::abs(spectral::integrate(tension::apply_Q(c, random_vec(g, 12, rng)))));
    s_dtau = std::max(s_dtau, max_norm(potentials::single_layer_on_interface(
                                  c, spectral::fourier_derivative(c.tangent()))));
  }
  s.add("integral_q_circles", q_int, 1e-10);
  s.add("single_layer_dtau_circles", s_dtau, 1e-10);

  double sym = 0.0, energy = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = perturbed_circle(random_shape(rng, 4, 0.1), g);
    const auto f = random_vec(g, 10, rng), h = random_vec(g, 10, rng);
    sym = std::max(sym, std::abs(spectral::inner(f, potentials::single_layer_on_interface(c, h)) -
                                 spectral::inner(potentials::single_layer_on_interface(c, f), h)));
    const auto sigma = random_trig(g, 10, rng);
    energy = std::max(energy, spectral::inner(sigma, tension::apply_L(c, sigma)));
  }
  s.add("single_layer_symmetry", sym, 1e-10);
  s.add("tension_operator_nonpositive", energy, 1e-10);

  {
    const PeriodicGrid g128(128);
    const auto c = ellipse(g128, 1.5, 1.0 / 1.5);
    const double in = (potentials::double_layer_identity(c, Vec2(0.3, 0.1)) + Mat2::Identity()).norm();
    const double out = potentials::double_layer_identity(c, Vec2(0.0, 2.0)).norm();
    double on = 0.0;
    for (int node = 0; node < g128.size(); node += 7) {
      on = std::max(on, (potentials::double_layer_identity_on_curve(c, node) + 0.5 * Mat2::Identity()).norm());
    }
    s.add("double_layer_interior", in, 1e-8);
    s.add("double_layer_exterior", out, 1e-10);
    s.add("double_layer_on_curve", on, 1e-6);
  }

  {
    const PerturbationSpec shape{0.1, {0.0, 0.4, -0.2}, {0.0, 0.3, 0.1}, 0.1};
    const double base = spectra::spectrum(perturbed_circle(shape, g)).leading;
    double diff = 0.0;
    for (double phi : {0.3, 1.7}) {
      diff = std::max(diff, std::abs(spectra::spectrum(perturbed_circle(shape.rotated(phi), g)).leading - base));
    }
    s.add("rotation_invariance", diff, 1e-9);
  }

  {
    const auto f = VectorGridFunction::sample(g, [](double t) { return Vec2(std::cos(t), std::sin(2 * t)); });
    const Vec2 dir(0.6, 0.8);
    const double u100 = potentials::velocity_at(unit, f, 100.0 * dir).norm();
    const double u200 = potentials::velocity_at(unit, f, 200.0 * dir).norm();
    // pass means strict decay; residual is the ratio itself
    s.add("far_field_decay", u200 / u100, 1.0 - 1e-12);
  }
}

void full_checks(Suite& s, std::mt19937_64& rng) {
  {
    const PeriodicGrid g(64);
    const auto c = circle(g);
    const auto f = VectorGridFunction::sample(g, [](double t) { return Vec2(1.0 + std::cos(t), std::sin(2 * t)); });
    auto speed = [&](double r) { return potentials::velocity_at(c, f, r * Vec2(0.6, 0.8)).norm(); };
    const double s2 = speed(1e2), s3 = speed(1e3), s4 = speed(1e4);
    s.add("far_field_log_growth", std::abs((s4 - s3) / (s3 - s2) - 1.0), 0.05);
  }

  {
    auto bending = [](const ClosedCurve& c) {
      return spectral::fourier_derivative(spectral::fourier_derivative(c.curvature() * c.normal()));
    };
    const auto e1 = ellipse(PeriodicGrid(128), 1.5, 1.0 / 1.5);
    const auto e2 = ellipse(PeriodicGrid(256), 1.5, 1.0 / 1.5);
    const auto s1 = tension::solve_tension(e1, ForceDensity(bending(e1)));
    const auto s2 = tension::solve_tension(e2, ForceDensity(bending(e2)));
    double change = 0.0;
    for (int j = 0; j < e1.size(); ++j) change = std::max(change, std::abs(s1.sigma[j] - s2.sigma[2 * j]));
    s.add("solve_grid_convergence", change / s2.sigma.max_abs(), 1e-8);
  }

  {
    const PerturbationSpec ex2{0.5, {0.0, 0.5}, {}, 0.1};
    const double a = spectra::spectrum(perturbed_circle(ex2, PeriodicGrid(64))).leading;
    const double b = spectra::spectrum(perturbed_circle(ex2, PeriodicGrid(128))).leading;
    s.add("spectrum_grid_convergence", std::abs(a - b), 1e-8);
  }

  const double eps[] = {0.005, 0.01, 0.02};
  {
    const auto sw = spectra::eigenvalue_sweep(PerturbationSpec{0.5, {0.0, 0.5}, {}, 0.0}, eps, 128);
    const double target = 3.0 / 16.0;
    s.add("example2_lambda2", std::abs(sw.fit->lambda2 + target) / target, 0.05);
    s.add("example2_lambda3", std::abs(sw.fit->lambda3 - target) / target, 0.25);
  }
  {
    const auto sw = spectra::eigenvalue_sweep(PerturbationSpec{0.0, {1.0}, {}, 0.0}, eps, 128);
    s.add("example1_lambda_over_eps2", std::abs(sw.rows[2].lambda_over_eps2), 0.02);
    s.add("example1_lambda_over_eps4", std::abs(sw.rows[0].lambda_over_eps4 + 0.046875) / 0.046875, 0.15);
  }
  {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const PerturbationSpec shape = random_shape(rng, 5, 0.0);
      const double predicted = spectra::lambda2(shape);
      if (predicted == 0.0) continue;
      const auto sw = spectra::eigenvalue_sweep(shape, eps, 64);
      worst = std::max(worst, std::abs(sw.fit->lambda2 - predicted) / std::abs(predicted));
    }
    s.add("lambda2_random_shapes", worst, 0.05);
  }
}

}  // namespace

ResultBundle cmd_verify(const std::string& level, std::uint64_t seed, const oracles::HilbertFn& hilbert) {
  if (level != "quick" && level != "full") {
    throw ConfigError("<command line>", 0, "level", "expected quick or full, got '" + level + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  Suite suite;
  quick_checks(suite, rng, hilbert);
  if (level == "full") full_checks(suite, rng);

  ResultBundle b;
  b.summary_name = "report.json";
  b.checks = suite.take();
  const auto failed = std::count_if(b.checks.begin(), b.checks.end(), [](const Check& c) { return !c.pass; });
  b.summary["command"] = "verify";
  b.summary["version"] = TENSION2D_VERSION;
  b.summary["level"] = level;
  b.summary["seed"] = seed;
  b.summary["check_count"] = b.checks.size();
  b.summary["failed_count"] = failed;
  b.summary["all_pass"] = failed == 0;
  b.summary["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

}  // namespace tension2d::cli
