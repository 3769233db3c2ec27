#include "tension2d/tension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "tension2d/errors.hpp"
#include "tension2d/potentials.hpp"

namespace tension2d {

int FrameFourierForce::max_mode() const {
  const std::size_t m = std::max({a.size(), b.size(), c.size(), d.size()});
  return m == 0 ? 0 : static_cast<int>(m) - 1;
}

VectorGridFunction FrameFourierForce::evaluate(const PeriodicGrid& grid) const {
  auto series = [](const std::vector<double>& cs, const std::vector<double>& ss, double t) {
    double v = 0.0;
    for (std::size_t k = 0; k < cs.size(); ++k) v += cs[k] * std::cos(static_cast<double>(k) * t);
    for (std::size_t k = 1; k < ss.size(); ++k) v += ss[k] * std::sin(static_cast<double>(k) * t);
    return v;
  };
  return VectorGridFunction::sample(grid, [&](double t) {
    const Vec2 xc(std::cos(t), std::sin(t));
    const Vec2 dxc(-std::sin(t), std::cos(t));
    return Vec2(series(a, b, t) * xc + series(c, d, t) * dxc);
  });
}

VectorGridFunction ForceDensity::samples(const PeriodicGrid& grid) const {
  if (const auto* raw = std::get_if<VectorGridFunction>(&repr_)) {
    if (!(raw->grid() == grid)) {
      throw std::invalid_argument("force samples were given on a different grid");
    }
    return *raw;
  }
  return std::get<FrameFourierForce>(repr_).evaluate(grid);
}

bool ForceDensity::is_mean_zero(const PeriodicGrid& grid, double tol) const {
  const auto f = samples(grid);
  const Vec2 total = spectral::integrate(f);
  for (int c = 0; c < 2; ++c) {
    if (std::abs(total[c]) > tol * std::max(f.component(c).max_abs(), 1e-300)) return false;
  }
  return true;
}

std::string to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::Auto: return "auto";
    case SolveMode::Plain: return "plain";
    case SolveMode::MeanZero: return "mean_zero";
  }
  return "unknown";
}

SolveMode solve_mode_from_string(const std::string& s) {
  if (s == "auto") return SolveMode::Auto;
  if (s == "plain") return SolveMode::Plain;
  if (s == "mean_zero") return SolveMode::MeanZero;
  throw std::invalid_argument("unknown solve mode '" + s + "' (expected auto, plain or mean_zero)");
}

namespace tension {

namespace {

/// Matrices shared by the assembled operators on one curve.
struct Assembly {
  Eigen::MatrixXd d;  ///< spectral derivative, N x N
  Eigen::MatrixXd s;  ///< single layer, 2N x 2N
  Eigen::MatrixXd q;  ///< N x 2N
  Eigen::MatrixXd b;  ///< sigma -> d(sigma tau), 2N x N
};

Assembly assemble(const ClosedCurve& curve) {
  const int n = curve.size();
  Assembly a;
  a.d = spectral::derivative_matrix(curve.grid());
  a.s = potentials::single_layer_matrix(curve);
  const Eigen::VectorXd tx = curve.tangent().component(0).as_vector();
  const Eigen::VectorXd ty = curve.tangent().component(1).as_vector();

  a.q.resize(n, 2 * n);
  a.q.noalias() = tx.asDiagonal() * (a.d * a.s.topRows(n));
  a.q.noalias() += ty.asDiagonal() * (a.d * a.s.bottomRows(n));

  a.b.resize(2 * n, n);
  a.b.topRows(n) = a.d * tx.asDiagonal();
  a.b.bottomRows(n) = a.d * ty.asDiagonal();
  return a;
}

double asymmetry_of(const Eigen::MatrixXd& m) {
  const double norm = m.norm();
  return norm > 0.0 ? (m - m.transpose()).norm() / norm : 0.0;
}

}  // namespace

GridFunction apply_Q(const ClosedCurve& curve, const VectorGridFunction& force) {
  const auto u = potentials::single_layer_on_interface(curve, force);
  return dot(curve.tangent(), spectral::fourier_derivative(u));
}

GridFunction apply_Q(const ClosedCurve& curve, const ForceDensity& force) {
  return apply_Q(curve, force.samples(curve.grid()));
}

VectorGridFunction tension_force(const ClosedCurve& curve, const GridFunction& sigma) {
  return spectral::fourier_derivative(sigma * curve.tangent());
}

GridFunction apply_L(const ClosedCurve& curve, const GridFunction& sigma) {
  return apply_Q(curve, tension_force(curve, sigma));
}

Eigen::MatrixXd assemble_Q(const ClosedCurve& curve) { return assemble(curve).q; }

OperatorMatrix assemble_L(const ClosedCurve& curve) {
  const Assembly a = assemble(curve);
  Eigen::MatrixXd m = a.q * a.b;
  const double asym = asymmetry_of(m);
  return {std::move(m), curve.grid(), curve.grid().spacing(), asym};
}

std::pair<GridFunction, GridFunction> decompose_rhs(const ClosedCurve& curve,
                                                    const VectorGridFunction& force) {
  return {dot(force, curve.tangent()), dot(force, curve.normal())};
}

TensionSolution solve_tension(const ClosedCurve& curve, const ForceDensity& force,
                              SolveMode mode, const SolveOptions& options) {
  const auto& grid = curve.grid();
  const int n = grid.size();
  const Assembly a = assemble(curve);
  const Eigen::MatrixXd m = a.q * a.b;
  const Eigen::VectorXd f = force.samples(grid).stacked();
  const Eigen::VectorXd rhs = -(a.q * f);

  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                  sym, Eigen::EigenvaluesOnly)
                                  .eigenvalues();
  const double radius = eig.cwiseAbs().maxCoeff();
  const double smallest = eig.cwiseAbs().minCoeff();
  const bool singular = smallest <= options.rank_tol * radius;

  TensionSolution sol{.sigma = GridFunction(grid), .interface_velocity = VectorGridFunction(grid), .warnings = {}};
  if (mode == SolveMode::Auto) mode = singular ? SolveMode::MeanZero : SolveMode::Plain;
  sol.mode = mode;

  // Smallest |eigenvalue| outside the numerical nullspace.
  double floor_eig = std::numeric_limits<double>::infinity();
  for (double v : eig) {
    if (std::abs(v) > options.rank_tol * radius) floor_eig = std::min(floor_eig, std::abs(v));
  }
  sol.condition_estimate = radius / floor_eig;

  Eigen::VectorXd sigma;
  if (mode == SolveMode::Plain) {
    if (singular) {
      std::ostringstream msg;
      msg << "tension operator is singular (smallest |eigenvalue| " << smallest
          << " <= " << options.rank_tol << " * " << radius
          << "); the curve is a circle, use mean_zero mode";
      throw SingularOperatorError(msg.str());
    }
    sigma = m.partialPivLu().solve(rhs);
  } else {
    Eigen::MatrixXd bordered = Eigen::MatrixXd::Zero(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = m;
    bordered.col(n).head(n).setOnes();
    bordered.row(n).head(n).setOnes();
    Eigen::VectorXd brhs(n + 1);
    brhs << rhs, 0.0;
    const Eigen::VectorXd z = bordered.partialPivLu().solve(brhs);
    sigma = z.head(n);
    const double multiplier = z[n];
    sol.constraint_multiplier = multiplier;
    if (std::abs(multiplier) > 1e-8 * std::max(rhs.cwiseAbs().maxCoeff(), 1e-300)) {
      std::ostringstream msg;
      msg << "mean-zero constraint is active (multiplier " << multiplier
          << "); the right-hand side is not in the range of the operator";
      sol.warnings.push_back(msg.str());
    }
  }

  if (sol.condition_estimate > options.ill_conditioned_threshold) {
    sol.ill_conditioned = true;
    std::ostringstream msg;
    msg << "IllConditioned: condition estimate " << sol.condition_estimate
        << " (curve is close to a circle)";
    sol.warnings.push_back(msg.str());
  }

  sol.sigma = GridFunction::from_vector(grid, sigma);
  const Eigen::VectorXd u = a.s * (f + a.b * sigma);
  sol.interface_velocity = VectorGridFunction::from_stacked(grid, u);
  const GridFunction rate =
      dot(curve.tangent(), spectral::fourier_derivative(sol.interface_velocity));
  sol.residual_inext = rate.max_abs();
  return sol;
}

}  // namespace tension
}  // namespace tension2d
