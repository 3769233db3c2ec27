#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tension2d/curve.hpp"
#include "tension2d/spectral.hpp"

namespace tension2d {

struct SpectrumReport {
  std::vector<double> eigenvalues;  ///< sorted descending
  double leading = 0.0;             ///< largest eigenvalue (closest to zero)
  double asymmetry = 0.0;           ///< ||M - M^T||_F / ||M||_F
  double epsilon = 0.0;
  int n_points = 0;
};

struct SweepRow {
  double epsilon;
  double lambda;
  double lambda_over_eps2;  ///< NaN at epsilon = 0
  double lambda_over_eps4;  ///< NaN at epsilon = 0
};

/// Least-squares line lambda/eps^2 = lambda2 + lambda3 eps.
struct SweepFit {
  double lambda2;
  double lambda3;
  int points;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< in input order
  std::optional<SweepFit> fit;
};

struct SweepOptions {
  int threads = 1;
  int fit_window = 3;  ///< number of smallest positive epsilons used in the fit
};

namespace spectra {

inline constexpr double kRankTol = 1e-8;

/// Eigenvalues of the symmetrized assembled tension operator.
SpectrumReport spectrum(const ClosedCurve& curve, double epsilon = 0.0);

/// -(1/8) sum_{n>=2} n(n^2-1)(g_n1^2 + g_n2^2).
double lambda2(const PerturbationSpec& spec);

/// Leading eigenvalue of the perturbed circle (1 + eps g) X_c for each eps.
SweepResult eigenvalue_sweep(const PerturbationSpec& shape, std::span<const double> epsilons,
                             int n_points, const SweepOptions& options = {});

/// Fit over the `window` smallest positive epsilons; nullopt with < 2 points.
std::optional<SweepFit> fit_lambda(std::span<const SweepRow> rows, int window = 3);

/// Eigenvector of the zero eigenvalue on a circle, normalized so that the
/// trapezoid integral of sigma^2 is 2 pi and its mean is positive. Throws
/// NotSingularError when the leading eigenvalue exceeds rank_tol * radius.
GridFunction nullspace_vector(const ClosedCurve& curve, double rank_tol = kRankTol);

}  // namespace spectra
}  // namespace tension2d
