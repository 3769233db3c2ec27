#pragma once

#include <vector>

#include "tension2d/spectral.hpp"

namespace tension2d {

/// Closed, simple, counter-clockwise curve sampled on a periodic grid, with
/// all derived geometry computed spectrally from the samples.
///
/// Conventions: tangent = dX/|dX|, normal = R_{pi/2} tangent = (t_y, -t_x)
/// which points outward for counter-clockwise curves, curvature is
/// (X' x X'') / |X'|^3 and equals +1/R on a circle of radius R.
class ClosedCurve {
 public:
  /// Build a curve from position samples. Throws ZeroSpeedError,
  /// SelfIntersectingError or OrientationError (checked in that order).
  static ClosedCurve from_samples(VectorGridFunction position);

  const PeriodicGrid& grid() const { return position_.grid(); }
  int size() const { return position_.size(); }

  const VectorGridFunction& position() const { return position_; }
  const VectorGridFunction& dposition() const { return dposition_; }
  const VectorGridFunction& d2position() const { return d2position_; }
  const GridFunction& speed() const { return speed_; }
  const VectorGridFunction& tangent() const { return tangent_; }
  const VectorGridFunction& normal() const { return normal_; }
  const GridFunction& curvature() const { return curvature_; }

  double length() const { return length_; }
  double signed_area() const { return signed_area_; }
  double star_norm() const { return star_norm_; }

 private:
  explicit ClosedCurve(VectorGridFunction position);

  VectorGridFunction position_;
  VectorGridFunction dposition_;
  VectorGridFunction d2position_;
  GridFunction speed_;
  VectorGridFunction tangent_;
  VectorGridFunction normal_;
  GridFunction curvature_;
  double length_ = 0.0;
  double signed_area_ = 0.0;
  double star_norm_ = 0.0;
};

/// Convenience alias for the builder.
inline ClosedCurve build_curve(VectorGridFunction position) {
  return ClosedCurve::from_samples(std::move(position));
}

/// Discrete star norm: min over node pairs of |X_j - X_k| / d(theta_j, theta_k)
/// with d the wrapped parameter distance.
double star_norm(const VectorGridFunction& position);
double star_norm(const ClosedCurve& curve);

struct ArclengthMap {
  GridFunction phi;  ///< cumulative arclength, phi(0) = 0
  double total_length;
};

ArclengthMap arclength_map(const ClosedCurve& curve);

/// Radial perturbation g of the unit circle and its amplitude epsilon:
/// g(theta) = g0 + sum_n (g_cos[n-1] cos(n theta) + g_sin[n-1] sin(n theta)).
struct PerturbationSpec {
  double g0 = 0.0;
  std::vector<double> g_cos;  ///< entry n-1 holds g_{n1}
  std::vector<double> g_sin;  ///< entry n-1 holds g_{n2}
  double epsilon = 0.0;

  double g(double theta) const;
  int max_mode() const;
  /// Same shape rotated by angle alpha: g(theta - alpha).
  PerturbationSpec rotated(double alpha) const;
};

/// (1 + eps g(theta)) (cos theta, sin theta).
ClosedCurve perturbed_circle(const PerturbationSpec& spec, const PeriodicGrid& grid);

ClosedCurve circle(const PeriodicGrid& grid, double radius = 1.0, Vec2 center = Vec2::Zero());
ClosedCurve ellipse(const PeriodicGrid& grid, double a, double b);

/// Fourier coefficients per component; index k holds the cos(k theta) / sin(k theta)
/// coefficient (sin entries at k = 0 are ignored).
struct FourierCurveSpec {
  std::vector<double> x_cos, x_sin, y_cos, y_sin;
};
ClosedCurve fourier_curve(const FourierCurveSpec& spec, const PeriodicGrid& grid);

/// The same geometric curve resampled at equal arclength spacing. `theta`
/// holds the original parameter value of each new node.
struct Reparametrized {
  ClosedCurve curve;
  std::vector<double> theta;
};
Reparametrized reparametrize_by_arclength(const ClosedCurve& curve);

}  // namespace tension2d
