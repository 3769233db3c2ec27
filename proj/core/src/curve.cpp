#include "tension2d/curve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "tension2d/errors.hpp"

namespace tension2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroSpeedTol = 1e-10;
constexpr double kSimplicityTol = 1e-6;

/// Trigonometric interpolant stored by its FFT coefficients, cheap to evaluate
/// repeatedly along with its derivative.
class TrigSeries {
 public:
  explicit TrigSeries(const GridFunction& f)
      : n_(f.size()), c_(spectral::forward_fft(f.values())) {}

  double operator()(double theta) const { return eval(theta, false); }
  double derivative(double theta) const { return eval(theta, true); }

 private:
  double eval(double theta, bool deriv) const {
    double sum = deriv ? 0.0 : c_[0].real();
    for (int k = 1; k < n_ / 2; ++k) {
      const auto e = std::polar(1.0, k * theta);
      const auto term = deriv ? c_[k] * e * std::complex<double>(0.0, k) : c_[k] * e;
      sum += 2.0 * term.real();
    }
    if (!deriv) sum += c_[n_ / 2].real() * std::cos(0.5 * n_ * theta);
    return sum / n_;
  }

  int n_;
  std::vector<std::complex<double>> c_;
};

double wrapped_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

ClosedCurve::ClosedCurve(VectorGridFunction position)
    : position_(std::move(position)),
      dposition_(spectral::fourier_derivative(position_)),
      d2position_(spectral::fourier_derivative(dposition_)),
      speed_(position_.grid()),
      tangent_(position_.grid()),
      normal_(position_.grid()),
      curvature_(position_.grid()) {
  const int n = position_.size();
  double max_speed = 0.0;
  double min_speed = std::numeric_limits<double>::infinity();
  int min_at = 0;
  for (int j = 0; j < n; ++j) {
    speed_[j] = dposition_[j].norm();
    max_speed = std::max(max_speed, speed_[j]);
    if (speed_[j] < min_speed) {
      min_speed = speed_[j];
      min_at = j;
    }
  }
  if (!(min_speed > kZeroSpeedTol * std::max(max_speed, 1.0))) {
    std::ostringstream msg;
    msg << "curve speed vanishes at node " << min_at << " (|dX| = " << min_speed << ")";
    throw ZeroSpeedError(msg.str());
  }

  double area2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec2& d1 = dposition_[j];
    const Vec2& d2 = d2position_[j];
    tangent_[j] = d1 / speed_[j];
    normal_[j] = Vec2(tangent_[j].y(), -tangent_[j].x());
    curvature_[j] = (d1.x() * d2.y() - d1.y() * d2.x()) / std::pow(speed_[j], 3);
    const Vec2& x = position_[j];
    area2 += x.x() * d1.y() - x.y() * d1.x();
  }
  length_ = spectral::integrate(speed_);
  signed_area_ = 0.5 * area2 * position_.grid().spacing();
  star_norm_ = tension2d::star_norm(position_);

  if (star_norm_ <= kSimplicityTol * length_) {
    std::ostringstream msg;
    msg << "curve is not simple: star norm " << star_norm_ << " <= " << kSimplicityTol
        << " * length";
    throw SelfIntersectingError(msg.str());
  }
  if (signed_area_ <= 0.0) {
    std::ostringstream msg;
    msg << "curve must be counter-clockwise, signed area is " << signed_area_;
    throw OrientationError(msg.str());
  }
}

ClosedCurve ClosedCurve::from_samples(VectorGridFunction position) {
  return ClosedCurve(std::move(position));
}

double star_norm(const VectorGridFunction& position) {
  const int n = position.size();
  const auto& grid = position.grid();
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double d = wrapped_distance(grid.node(j), grid.node(k));
      best = std::min(best, (position[j] - position[k]).norm() / d);
    }
  }
  return best;
}

double star_norm(const ClosedCurve& curve) { return curve.star_norm(); }

ArclengthMap arclength_map(const ClosedCurve& curve) {
  const auto& speed = curve.speed();
  const double mean_speed = speed.mean();
  // Periodic antiderivative of the speed fluctuation: multiplier 1/(ik).
  GridFunction periodic = spectral::apply_multiplier(speed, [](int k, int n) -> std::complex<double> {
    if (k == 0 || 2 * k == n) return 0.0;
    return {0.0, -1.0 / k};
  });
  GridFunction phi(speed.grid());
  for (int j = 0; j < speed.size(); ++j) {
    phi[j] = mean_speed * speed.grid().node(j) + periodic[j] - periodic[0];
  }
  return {std::move(phi), spectral::integrate(speed)};
}

// ---------------------------------------------------------------------------

double PerturbationSpec::g(double theta) const {
  double v = g0;
  for (std::size_t i = 0; i < g_cos.size(); ++i) v += g_cos[i] * std::cos((i + 1.0) * theta);
  for (std::size_t i = 0; i < g_sin.size(); ++i) v += g_sin[i] * std::sin((i + 1.0) * theta);
  return v;
}

int PerturbationSpec::max_mode() const {
  return static_cast<int>(std::max(g_cos.size(), g_sin.size()));
}

PerturbationSpec PerturbationSpec::rotated(double alpha) const {
  PerturbationSpec out = *this;
  const int m = max_mode();
  out.g_cos.assign(m, 0.0);
  out.g_sin.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double a = i < static_cast<int>(g_cos.size()) ? g_cos[i] : 0.0;
    const double b = i < static_cast<int>(g_sin.size()) ? g_sin[i] : 0.0;
    const double c = std::cos((i + 1.0) * alpha);
    const double s = std::sin((i + 1.0) * alpha);
    // a cos(n(t - alpha)) + b sin(n(t - alpha))
    out.g_cos[i] = a * c - b * s;
    out.g_sin[i] = a * s + b * c;
  }
  return out;
}

ClosedCurve perturbed_circle(const PerturbationSpec& spec, const PeriodicGrid& grid) {
  for (int j = 0; j < grid.size(); ++j) {
    if (!(1.0 + spec.epsilon * spec.g(grid.node(j)) > 0.0)) {
      throw ZeroSpeedError("perturbed circle radius 1 + eps g is not positive at node " +
                           std::to_string(j));
    }
  }
  return ClosedCurve::from_samples(VectorGridFunction::sample(grid, [&](double t) {
    const double r = 1.0 + spec.epsilon * spec.g(t);
    return Vec2(r * std::cos(t), r * std::sin(t));
  }));
}

ClosedCurve circle(const PeriodicGrid& grid, double radius, Vec2 center) {
  return ClosedCurve::from_samples(VectorGridFunction::sample(grid, [&](double t) {
    return Vec2(center.x() + radius * std::cos(t), center.y() + radius * std::sin(t));
  }));
}

ClosedCurve ellipse(const PeriodicGrid& grid, double a, double b) {
  return ClosedCurve::from_samples(VectorGridFunction::sample(
      grid, [&](double t) { return Vec2(a * std::cos(t), b * std::sin(t)); }));
}

ClosedCurve fourier_curve(const FourierCurveSpec& spec, const PeriodicGrid& grid) {
  auto series = [](const std::vector<double>& cs, const std::vector<double>& ss, double t) {
    double v = 0.0;
    for (std::size_t k = 0; k < cs.size(); ++k) v += cs[k] * std::cos(static_cast<double>(k) * t);
    for (std::size_t k = 1; k < ss.size(); ++k) v += ss[k] * std::sin(static_cast<double>(k) * t);
    return v;
  };
  return ClosedCurve::from_samples(VectorGridFunction::sample(grid, [&](double t) {
    return Vec2(series(spec.x_cos, spec.x_sin, t), series(spec.y_cos, spec.y_sin, t));
  }));
}

Reparametrized reparametrize_by_arclength(const ClosedCurve& curve) {
  const auto& grid = curve.grid();
  const int n = grid.size();
  const auto [phi, length] = arclength_map(curve);
  // phi(theta) = (L / 2pi) theta + periodic(theta); interpolate the periodic part.
  const double slope = length / kTwoPi;
  GridFunction periodic(grid);
  for (int j = 0; j < n; ++j) periodic[j] = phi[j] - slope * grid.node(j);
  const TrigSeries p(periodic);
  const TrigSeries x(curve.position().component(0));
  const TrigSeries y(curve.position().component(1));

  std::vector<double> theta(n);
  std::vector<Vec2> samples(n);
  for (int j = 0; j < n; ++j) {
    const double target = length * j / n;
    double t = grid.node(j);
    for (int it = 0; it < 50; ++it) {
      const double residual = slope * t + p(t) - target;
      const double step = residual / (slope + p.derivative(t));
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    theta[j] = t;
    samples[j] = Vec2(x(t), y(t));
  }
  return {ClosedCurve::from_samples(VectorGridFunction(grid, std::move(samples))),
          std::move(theta)};
}

}  // namespace tension2d
