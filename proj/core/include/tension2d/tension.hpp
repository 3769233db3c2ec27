#pragma once

// Tension determination in the theta parametrization:
//
//   Q[F]     = tau . d/dtheta S[F]
//   L sigma  = Q[d/dtheta(sigma tau)]
//   L sigma  = -Q[F]
//
// On a circle L annihilates constants, so the solve is closed with the
// normalization int sigma dtheta = 0.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "tension2d/curve.hpp"
#include "tension2d/spectral.hpp"

namespace tension2d {

/// Force expanded in the polar frame {X_c, dX_c/dtheta}:
///   F = sum_n (a_n cos + b_n sin)(n theta) X_c + (c_n cos + d_n sin)(n theta) dX_c.
/// Index n of each vector is the mode-n coefficient (b_0, d_0 unused).
struct FrameFourierForce {
  std::vector<double> a, b, c, d;

  int max_mode() const;
  VectorGridFunction evaluate(const PeriodicGrid& grid) const;
};

/// Interfacial force density per unit theta, given as raw samples or as
/// frame coefficients.
class ForceDensity {
 public:
  ForceDensity(VectorGridFunction samples) : repr_(std::move(samples)) {}  // NOLINT
  ForceDensity(FrameFourierForce coeffs) : repr_(std::move(coeffs)) {}     // NOLINT

  VectorGridFunction samples(const PeriodicGrid& grid) const;
  bool is_frame() const { return std::holds_alternative<FrameFourierForce>(repr_); }

  /// |int F dtheta| <= tol * max|F| per component.
  bool is_mean_zero(const PeriodicGrid& grid, double tol = 1e-10) const;

 private:
  std::variant<VectorGridFunction, FrameFourierForce> repr_;
};

struct OperatorMatrix {
  Eigen::MatrixXd entries;  ///< acts on nodal samples
  PeriodicGrid grid;
  double weight;     ///< trapezoid weight 2pi/N of the inner product
  double asymmetry;  ///< ||M - M^T||_F / ||M||_F
};

enum class SolveMode { Auto, Plain, MeanZero };

std::string to_string(SolveMode mode);
SolveMode solve_mode_from_string(const std::string& s);

struct TensionSolution {
  GridFunction sigma;
  VectorGridFunction interface_velocity;
  double residual_inext = 0.0;  ///< max |tau . dU/dtheta|
  SolveMode mode = SolveMode::Plain;  ///< mode actually used (never Auto)
  double condition_estimate = 0.0;
  /// Auxiliary scalar of the bordered system (0 in plain mode).
  double constraint_multiplier = 0.0;
  bool ill_conditioned = false;
  std::vector<std::string> warnings;
};

struct SolveOptions {
  /// Auto mode switches to the bordered system when the smallest |eigenvalue|
  /// is below rank_tol times the spectral radius.
  double rank_tol = 1e-8;
  /// Condition estimate above which an IllConditioned warning is attached.
  double ill_conditioned_threshold = 1e6;
};

namespace tension {

/// Q[F] = tau . d/dtheta S[F].
GridFunction apply_Q(const ClosedCurve& curve, const VectorGridFunction& force);
GridFunction apply_Q(const ClosedCurve& curve, const ForceDensity& force);

/// d/dtheta(sigma tau), the tension force.
VectorGridFunction tension_force(const ClosedCurve& curve, const GridFunction& sigma);

/// L sigma = Q[d/dtheta(sigma tau)].
GridFunction apply_L(const ClosedCurve& curve, const GridFunction& sigma);

/// N x 2N matrix of Q on stacked [x; y] force samples.
Eigen::MatrixXd assemble_Q(const ClosedCurve& curve);
OperatorMatrix assemble_L(const ClosedCurve& curve);

/// f1 = F . tau, f2 = F . n.
std::pair<GridFunction, GridFunction> decompose_rhs(const ClosedCurve& curve,
                                                    const VectorGridFunction& force);

/// Solve L sigma = -Q[F]. Plain mode throws SingularOperatorError when the
/// operator has a numerical nullspace (circle).
TensionSolution solve_tension(const ClosedCurve& curve, const ForceDensity& force,
                              SolveMode mode = SolveMode::Auto,
                              const SolveOptions& options = {});

}  // namespace tension
}  // namespace tension2d
