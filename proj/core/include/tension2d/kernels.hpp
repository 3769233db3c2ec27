#pragma once

#include <array>

#include "tension2d/spectral.hpp"

namespace tension2d {

using KernelValue2x2 = Mat2;

/// Fully symmetric rank-3 tensor of the stress kernel.
class Stresslet {
 public:
  double operator()(int i, int j, int k) const { return t_[4 * i + 2 * j + k]; }
  double& operator()(int i, int j, int k) { return t_[4 * i + 2 * j + k]; }

  /// Contract the last index with v: (Theta v)_ij = Theta_ijk v_k.
  Mat2 contract(const Vec2& v) const;

 private:
  std::array<double, 8> t_{};
};

namespace kernels {

inline constexpr double kDefaultSingularTol = 1e-13;

/// G(r) = (1/4pi)(-log|r| I + r r^T / |r|^2). Throws SingularPointError when
/// |r| < tol.
KernelValue2x2 stokeslet(const Vec2& r, double tol = kDefaultSingularTol);

/// Pi(r) = r / (2pi |r|^2).
Vec2 pressure_kernel(const Vec2& r, double tol = kDefaultSingularTol);

/// Theta_ijk(r) = -(1/pi) r_i r_j r_k / |r|^4.
Stresslet stresslet(const Vec2& r, double tol = kDefaultSingularTol);

/// R_C(s, s') = cot((s - s')/2)/2 - 1/(s - s') with s - s' wrapped to
/// (-pi, pi]; returns the limit 0 on the diagonal.
double cot_regularization(double s, double s_prime);

}  // namespace kernels
}  // namespace tension2d
