#pragma once

// Single-layer Stokes potentials generated by a force density on a closed
// curve. Densities are per unit parameter (theta), so the single layer is
//   S[g](theta) = int G(X(theta) - X(theta')) g(theta') dtheta'.

#include <vector>

#include <Eigen/Core>

#include "tension2d/curve.hpp"
#include "tension2d/spectral.hpp"

namespace tension2d {

struct FieldSample {
  Vec2 point;
  Vec2 velocity;
  double pressure = 0.0;
  Mat2 stress;  ///< grad u + grad u^T - p I
};

namespace potentials {

/// On-interface single layer with spectrally accurate log-singular quadrature:
/// the -log|2 sin((theta-theta')/2)| part of the Stokeslet is applied as an
/// exact Fourier multiplier, the smooth remainders by the trapezoid rule with
/// analytic diagonal limits (-log|X'| and tangent (x) tangent).
VectorGridFunction single_layer_on_interface(const ClosedCurve& curve,
                                             const VectorGridFunction& density);

/// Same operator as a 2N x 2N matrix acting on stacked [x; y] densities.
Eigen::MatrixXd single_layer_matrix(const ClosedCurve& curve);

/// Off-interface guard distance 5 h max|X'|.
double safe_distance(const ClosedCurve& curve);

/// Trapezoid evaluation away from the curve; throws TooCloseToInterfaceError
/// inside the guard band.
Vec2 velocity_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x);
double pressure_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x);
Mat2 stress_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x);
FieldSample evaluate_field(const ClosedCurve& curve, const VectorGridFunction& density,
                           const Vec2& x);

/// K_ij(y, x) = Theta_ijk(y - x) n_k(y).
Mat2 double_layer_kernel(const Vec2& y, const Vec2& x, const Vec2& normal_y);

/// int_Gamma K(y, x) ds(y) for an off-curve point: -I inside, 0 outside.
Mat2 double_layer_identity(const ClosedCurve& curve, const Vec2& x);
/// Same integral at a node of the curve, using the diagonal limit
/// -kappa tau tau^T / (2 pi); equals -I/2.
Mat2 double_layer_identity_on_curve(const ClosedCurve& curve, int node);

struct JumpProbeRow {
  double distance = 0.0;
  Vec2 traction_inner;  ///< Sigma(X - d n) n
  Vec2 traction_outer;  ///< Sigma(X + d n) n
  Vec2 jump;            ///< (inner - outer) |X'|, comparable to the density
  double error = 0.0;   ///< |jump - density| / |density| (absolute if density = 0)
};

/// Normal-traction difference across the curve at one node, for a list of
/// strictly decreasing offsets.
std::vector<JumpProbeRow> stress_jump_probe(const ClosedCurve& curve,
                                            const VectorGridFunction& density, int node,
                                            const std::vector<double>& distances);

}  // namespace potentials
}  // namespace tension2d
