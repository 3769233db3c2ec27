#include "tension2d/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tension2d/errors.hpp"
#include "tension2d/kernels.hpp"

namespace tension2d::potentials {

namespace {

constexpr double kPi = std::numbers::pi;

/// Smooth part of -log|X(theta_i) - X(theta_j)| after removing the periodic
/// log kernel; diagonal limit -log|X'(theta_i)|.
double log_remainder(const ClosedCurve& curve, int i, int j) {
  if (i == j) return -std::log(curve.speed()[i]);
  const auto& grid = curve.grid();
  const double chord = std::abs(2.0 * std::sin(0.5 * (grid.node(i) - grid.node(j))));
  return -std::log((curve.position()[i] - curve.position()[j]).norm() / chord);
}

/// r r^T / |r|^2 with r = X_i - X_j; diagonal limit tau tau^T.
Mat2 dyadic(const ClosedCurve& curve, int i, int j) {
  if (i == j) {
    const Vec2& t = curve.tangent()[i];
    return t * t.transpose();
  }
  const Vec2 r = curve.position()[i] - curve.position()[j];
  return r * r.transpose() / r.squaredNorm();
}

void guard(const ClosedCurve& curve, const Vec2& x) {
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& p : curve.position().values()) nearest = std::min(nearest, (x - p).norm());
  const double h_safe = safe_distance(curve);
  if (nearest <= h_safe) {
    std::ostringstream msg;
    msg << "evaluation point (" << x.x() << ", " << x.y() << ") is " << nearest
        << " from the interface, inside the guard distance " << h_safe;
    throw TooCloseToInterfaceError(msg.str());
  }
}

}  // namespace

VectorGridFunction single_layer_on_interface(const ClosedCurve& curve,
                                             const VectorGridFunction& density) {
  if (!(curve.grid() == density.grid())) {
    throw std::invalid_argument("density and curve live on different grids");
  }
  const int n = curve.size();
  const double w = curve.grid().spacing() / (4.0 * kPi);
  VectorGridFunction out = 0.5 * spectral::log_kernel_multiplier(density);
  for (int i = 0; i < n; ++i) {
    Vec2 acc = Vec2::Zero();
    for (int j = 0; j < n; ++j) {
      acc += (log_remainder(curve, i, j) * Mat2::Identity() + dyadic(curve, i, j)) * density[j];
    }
    out[i] += w * acc;
  }
  return out;
}

Eigen::MatrixXd single_layer_matrix(const ClosedCurve& curve) {
  const int n = curve.size();
  const double w = curve.grid().spacing() / (4.0 * kPi);
  const Eigen::MatrixXd lk = 0.5 * spectral::log_kernel_matrix(curve.grid());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = lk;
  s.bottomRightCorner(n, n) = lk;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Mat2 block = w * (log_remainder(curve, i, j) * Mat2::Identity() + dyadic(curve, i, j));
      s(i, j) += block(0, 0);
      s(i, n + j) += block(0, 1);
      s(n + i, j) += block(1, 0);
      s(n + i, n + j) += block(1, 1);
    }
  }
  return s;
}

double safe_distance(const ClosedCurve& curve) {
  double max_speed = 0.0;
  for (double v : curve.speed().values()) max_speed = std::max(max_speed, v);
  return 5.0 * curve.grid().spacing() * max_speed;
}

Vec2 velocity_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x) {
  guard(curve, x);
  Vec2 u = Vec2::Zero();
  for (int j = 0; j < curve.size(); ++j) {
    u += kernels::stokeslet(x - curve.position()[j]) * density[j];
  }
  return u * curve.grid().spacing();
}

double pressure_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x) {
  guard(curve, x);
  double p = 0.0;
  for (int j = 0; j < curve.size(); ++j) {
    p += kernels::pressure_kernel(x - curve.position()[j]).dot(density[j]);
  }
  return p * curve.grid().spacing();
}

Mat2 stress_at(const ClosedCurve& curve, const VectorGridFunction& density, const Vec2& x) {
  guard(curve, x);
  Mat2 s = Mat2::Zero();
  for (int j = 0; j < curve.size(); ++j) {
    s += kernels::stresslet(x - curve.position()[j]).contract(density[j]);
  }
  return s * curve.grid().spacing();
}

FieldSample evaluate_field(const ClosedCurve& curve, const VectorGridFunction& density,
                           const Vec2& x) {
  return {x, velocity_at(curve, density, x), pressure_at(curve, density, x),
          stress_at(curve, density, x)};
}

Mat2 double_layer_kernel(const Vec2& y, const Vec2& x, const Vec2& normal_y) {
  return kernels::stresslet(y - x).contract(normal_y);
}

Mat2 double_layer_identity(const ClosedCurve& curve, const Vec2& x) {
  Mat2 acc = Mat2::Zero();
  for (int j = 0; j < curve.size(); ++j) {
    acc += double_layer_kernel(curve.position()[j], x, curve.normal()[j]) * curve.speed()[j];
  }
  return acc * curve.grid().spacing();
}

Mat2 double_layer_identity_on_curve(const ClosedCurve& curve, int node) {
  if (node < 0 || node >= curve.size()) throw std::out_of_range("node index out of range");
  const Vec2& x = curve.position()[node];
  Mat2 acc = Mat2::Zero();
  for (int j = 0; j < curve.size(); ++j) {
    Mat2 k;
    if (j == node) {
      const Vec2& t = curve.tangent()[j];
      k = -curve.curvature()[j] / (2.0 * kPi) * (t * t.transpose());
    } else {
      k = double_layer_kernel(curve.position()[j], x, curve.normal()[j]);
    }
    acc += k * curve.speed()[j];
  }
  return acc * curve.grid().spacing();
}

std::vector<JumpProbeRow> stress_jump_probe(const ClosedCurve& curve,
                                            const VectorGridFunction& density, int node,
                                            const std::vector<double>& distances) {
  if (node < 0 || node >= curve.size()) throw std::out_of_range("node index out of range");
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!(distances[i] > 0.0) || (i > 0 && !(distances[i] < distances[i - 1]))) {
      throw std::invalid_argument("probe distances must be positive and strictly decreasing");
    }
  }
  const Vec2& x0 = curve.position()[node];
  const Vec2& n = curve.normal()[node];
  const Vec2& target = density[node];
  std::vector<JumpProbeRow> rows;
  rows.reserve(distances.size());
  for (double d : distances) {
    JumpProbeRow row;
    row.distance = d;
    row.traction_inner = stress_at(curve, density, x0 - d * n) * n;
    row.traction_outer = stress_at(curve, density, x0 + d * n) * n;
    row.jump = (row.traction_inner - row.traction_outer) * curve.speed()[node];
    const double diff = (row.jump - target).norm();
    row.error = target.norm() > 0.0 ? diff / target.norm() : diff;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tension2d::potentials
