#include "tension2d/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tension2d/errors.hpp"

namespace tension2d {

Mat2 Stresslet::contract(const Vec2& v) const {
  Mat2 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m(i, j) = (*this)(i, j, 0) * v.x() + (*this)(i, j, 1) * v.y();
  }
  return m;
}

namespace kernels {

namespace {

constexpr double kPi = std::numbers::pi;

void check_separation(const Vec2& r, double tol) {
  if (r.norm() < tol) {
    std::ostringstream msg;
    msg << "kernel evaluated at |r| = " << r.norm() << " < " << tol;
    throw SingularPointError(msg.str());
  }
}

}  // namespace

KernelValue2x2 stokeslet(const Vec2& r, double tol) {
  check_separation(r, tol);
  const double r2 = r.squaredNorm();
  return (-0.5 * std::log(r2) * Mat2::Identity() + r * r.transpose() / r2) / (4.0 * kPi);
}

Vec2 pressure_kernel(const Vec2& r, double tol) {
  check_separation(r, tol);
  return r / (2.0 * kPi * r.squaredNorm());
}

Stresslet stresslet(const Vec2& r, double tol) {
  check_separation(r, tol);
  const double r2 = r.squaredNorm();
  const double scale = -1.0 / (kPi * r2 * r2);
  Stresslet t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) t(i, j, k) = scale * r[i] * r[j] * r[k];
  return t;
}

double cot_regularization(double s, double s_prime) {
  double d = std::remainder(s - s_prime, 2.0 * kPi);  // (-pi, pi]
  if (d <= -kPi) d += 2.0 * kPi;
  if (std::abs(d) < 1e-4) {
    // cot(x/2)/2 - 1/x = -x/12 - x^3/720 - x^5/30240 + ...
    const double d2 = d * d;
    return -d / 12.0 - d * d2 / 720.0 - d * d2 * d2 / 30240.0;
  }
  return 0.5 / std::tan(0.5 * d) - 1.0 / d;
}

}  // namespace kernels
}  // namespace tension2d
