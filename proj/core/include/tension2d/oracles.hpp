#pragma once

// Closed forms on the unit circle and exact identities, computed along code
// paths that share nothing with the potentials/tension kernels.

#include <functional>
#include <string>
#include <vector>

#include "tension2d/curve.hpp"
#include "tension2d/spectral.hpp"
#include "tension2d/tension.hpp"

namespace tension2d::oracles {

/// Mean-zero tension on the unit circle for a force in the polar frame.
GridFunction circle_sigma(const FrameFourierForce& force, const PeriodicGrid& grid);

/// Q_0[F] = -dX_c . (1/4) H F - (1/8pi) int X_c . F on the unit circle.
GridFunction Q0_closed_form(const VectorGridFunction& force);

struct TolandSides {
  GridFunction lhs;  ///< g H g' - (1/2) H (g^2)'
  GridFunction rhs;  ///< (1/8pi) int |g - g'|^2 / sin^2((theta - theta')/2)
};
TolandSides toland_check(const GridFunction& g);

/// Q[F] through the split -1/4 tau.H F + (1/4pi) tau.(F_C + F_T).
GridFunction split_Q_check(const ClosedCurve& curve, const VectorGridFunction& force);

struct TrigCoefficients {
  std::vector<double> cos;  ///< cos[n], n = 0..n_max (cos[0] is the mean)
  std::vector<double> sin;  ///< sin[n], sin[0] = 0
};
/// Real Fourier coefficients of f up to mode n_max < N/2.
TrigCoefficients trig_coefficients(const GridFunction& f, int n_max);

/// Frame coefficients from F . X_c (normal part on the unit circle) and
/// F . dX_c (tangential part).
FrameFourierForce frame_from_components(const GridFunction& f_normal,
                                        const GridFunction& f_tangent, int n_max);

using HilbertFn = std::function<GridFunction(const GridFunction&)>;

struct HilbertIdentity {
  std::string name;
  std::string table;         ///< "hilbert_01" or "hilbert_02"
  bool differentiate;        ///< H is applied to d/dtheta of the input
  std::function<Vec2(double)> input;
  std::function<Vec2(double)> expected;
};

/// Trig tables for H[f X_c], H[f dX_c] and their theta derivatives.
std::vector<HilbertIdentity> hilbert_identities();

struct IdentityResidual {
  std::string name;
  std::string table;
  double residual;  ///< max norm of H[input] - expected
};

/// Evaluates every table entry with the given Hilbert transform so that a
/// deliberately broken transform can be checked to fail.
std::vector<IdentityResidual> hilbert_residuals(const PeriodicGrid& grid,
                                                const HilbertFn& hilbert = HilbertFn{});

}  // namespace tension2d::oracles
