#include "tension2d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace tension2d {

namespace {

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("grid function has non-finite samples");
    }
  }
}

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) {
    throw std::invalid_argument("grid functions live on different grids");
  }
}

}  // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("periodic grid needs an even number of points >= 8, got " +
                                std::to_string(n));
  }
}

double PeriodicGrid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double PeriodicGrid::node(int j) const { return spacing() * j; }

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> out(n_);
  for (int j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size()) {
    throw std::invalid_argument("grid function length does not match grid");
  }
  require_finite(values_);
}

GridFunction::GridFunction(PeriodicGrid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction GridFunction::sample(const PeriodicGrid& grid,
                                  const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
  return {grid, std::move(v)};
}

GridFunction GridFunction::constant(const PeriodicGrid& grid, double c) {
  return {grid, std::vector<double>(grid.size(), c)};
}

GridFunction GridFunction::from_vector(const PeriodicGrid& grid, const Eigen::VectorXd& v) {
  return {grid, std::vector<double>(v.data(), v.data() + v.size())};
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (int j = 0; j < size(); ++j) values_[j] += other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (int j = 0; j < size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(GridFunction a, double s) { return a *= s; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  GridFunction out(a.grid());
  for (int j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

// ---------------------------------------------------------------------------

VectorGridFunction::VectorGridFunction(PeriodicGrid grid, std::vector<Vec2> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size()) {
    throw std::invalid_argument("vector grid function length does not match grid");
  }
  for (const auto& v : values_) {
    if (!v.allFinite()) throw std::invalid_argument("vector grid function has non-finite samples");
  }
}

VectorGridFunction::VectorGridFunction(PeriodicGrid grid)
    : grid_(grid), values_(grid.size(), Vec2::Zero()) {}

VectorGridFunction::VectorGridFunction(const GridFunction& x, const GridFunction& y)
    : grid_(x.grid()), values_(x.size()) {
  require_same_grid(x.grid(), y.grid());
  for (int j = 0; j < x.size(); ++j) values_[j] = Vec2(x[j], y[j]);
}

VectorGridFunction VectorGridFunction::sample(const PeriodicGrid& grid,
                                              const std::function<Vec2(double)>& f) {
  std::vector<Vec2> v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
  return {grid, std::move(v)};
}

GridFunction VectorGridFunction::component(int c) const {
  GridFunction out(grid_);
  for (int j = 0; j < size(); ++j) out[j] = values_[j][c];
  return out;
}

Eigen::VectorXd VectorGridFunction::stacked() const {
  const int n = size();
  Eigen::VectorXd v(2 * n);
  for (int j = 0; j < n; ++j) {
    v[j] = values_[j].x();
    v[n + j] = values_[j].y();
  }
  return v;
}

VectorGridFunction VectorGridFunction::from_stacked(const PeriodicGrid& grid,
                                                    const Eigen::VectorXd& v) {
  const int n = grid.size();
  if (v.size() != 2 * n) throw std::invalid_argument("stacked vector has wrong length");
  std::vector<Vec2> out(n);
  for (int j = 0; j < n; ++j) out[j] = Vec2(v[j], v[n + j]);
  return {grid, std::move(out)};
}

double VectorGridFunction::max_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.norm());
  return m;
}

VectorGridFunction& VectorGridFunction::operator+=(const VectorGridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (int j = 0; j < size(); ++j) values_[j] += other.values_[j];
  return *this;
}

VectorGridFunction& VectorGridFunction::operator-=(const VectorGridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (int j = 0; j < size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

VectorGridFunction& VectorGridFunction::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

VectorGridFunction operator+(VectorGridFunction a, const VectorGridFunction& b) { return a += b; }
VectorGridFunction operator-(VectorGridFunction a, const VectorGridFunction& b) { return a -= b; }
VectorGridFunction operator*(VectorGridFunction a, double s) { return a *= s; }
VectorGridFunction operator*(double s, VectorGridFunction a) { return a *= s; }

VectorGridFunction operator*(const GridFunction& s, const VectorGridFunction& v) {
  require_same_grid(s.grid(), v.grid());
  VectorGridFunction out(v.grid());
  for (int j = 0; j < v.size(); ++j) out[j] = s[j] * v[j];
  return out;
}

GridFunction dot(const VectorGridFunction& a, const VectorGridFunction& b) {
  require_same_grid(a.grid(), b.grid());
  GridFunction out(a.grid());
  for (int j = 0; j < a.size(); ++j) out[j] = a[j].dot(b[j]);
  return out;
}

// ---------------------------------------------------------------------------

namespace spectral {

int wavenumber(int j, int n) { return j <= n / 2 ? j : j - n; }

std::vector<std::complex<double>> forward_fft(std::span<const double> values) {
  // Eigen::FFT keeps its plans in the object, so a local instance is thread safe.
  Eigen::FFT<double> fft;
  std::vector<double> in(values.begin(), values.end());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  return out;
}

std::vector<double> inverse_fft_real(std::span<const std::complex<double>> coeffs) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(coeffs.begin(), coeffs.end());
  std::vector<std::complex<double>> out;
  fft.inv(out, in);
  std::vector<double> re(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) re[j] = out[j].real();
  return re;
}

GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<std::complex<double>(int, int)>& m) {
  const int n = f.size();
  auto c = forward_fft(f.values());
  for (int j = 0; j < n; ++j) c[j] *= m(wavenumber(j, n), n);
  return {f.grid(), inverse_fft_real(c)};
}

GridFunction fourier_derivative(const GridFunction& f) {
  return apply_multiplier(f, [](int k, int n) -> std::complex<double> {
    if (2 * k == n) return 0.0;
    return {0.0, static_cast<double>(k)};
  });
}

GridFunction hilbert_transform(const GridFunction& f) {
  return apply_multiplier(f, [](int k, int n) -> std::complex<double> {
    if (k == 0 || 2 * k == n) return 0.0;
    return {0.0, k > 0 ? -1.0 : 1.0};
  });
}

GridFunction hilbert_dtheta(const GridFunction& f) {
  return apply_multiplier(f, [](int k, int n) -> std::complex<double> {
    if (2 * k == n) return 0.0;
    return static_cast<double>(std::abs(k));
  });
}

GridFunction log_kernel_multiplier(const GridFunction& f) {
  return apply_multiplier(f, [](int k, int) -> std::complex<double> {
    if (k == 0) return 0.0;
    return 1.0 / (2.0 * std::abs(k));
  });
}

namespace {
template <class Op>
VectorGridFunction componentwise(const VectorGridFunction& f, Op op) {
  return {op(f.component(0)), op(f.component(1))};
}
}  // namespace

VectorGridFunction fourier_derivative(const VectorGridFunction& f) {
  return componentwise(f, [](const GridFunction& g) { return fourier_derivative(g); });
}

VectorGridFunction hilbert_transform(const VectorGridFunction& f) {
  return componentwise(f, [](const GridFunction& g) { return hilbert_transform(g); });
}

VectorGridFunction log_kernel_multiplier(const VectorGridFunction& f) {
  return componentwise(f, [](const GridFunction& g) { return log_kernel_multiplier(g); });
}

Eigen::MatrixXd operator_matrix(const PeriodicGrid& grid,
                                const std::function<GridFunction(const GridFunction&)>& op) {
  const int n = grid.size();
  Eigen::MatrixXd m(n, n);
  GridFunction e(grid);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    m.col(j) = op(e).as_vector();
    e[j] = 0.0;
  }
  return m;
}

Eigen::MatrixXd derivative_matrix(const PeriodicGrid& grid) {
  return operator_matrix(grid, [](const GridFunction& f) { return fourier_derivative(f); });
}

Eigen::MatrixXd log_kernel_matrix(const PeriodicGrid& grid) {
  return operator_matrix(grid, [](const GridFunction& f) { return log_kernel_multiplier(f); });
}

double interpolate(const GridFunction& f, double theta) {
  const int n = f.size();
  const auto c = forward_fft(f.values());
  double sum = c[0].real();
  for (int k = 1; k < n / 2; ++k) {
    sum += 2.0 * (c[k] * std::polar(1.0, k * theta)).real();
  }
  sum += c[n / 2].real() * std::cos(0.5 * n * theta);
  return sum / n;
}

Vec2 interpolate(const VectorGridFunction& f, double theta) {
  return {interpolate(f.component(0), theta), interpolate(f.component(1), theta)};
}

double integrate(const GridFunction& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().spacing();
}

Vec2 integrate(const VectorGridFunction& f) {
  Vec2 s = Vec2::Zero();
  for (const auto& v : f.values()) s += v;
  return s * f.grid().spacing();
}

double inner(const GridFunction& f, const GridFunction& g) { return integrate(f * g); }

double inner(const VectorGridFunction& f, const VectorGridFunction& g) {
  return integrate(dot(f, g));
}

double spectral_tail(const GridFunction& f) {
  const int n = f.size();
  const auto c = forward_fft(f.values());
  double head = 0.0;
  double tail = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(c[j]);
    head = std::max(head, a);
    if (std::abs(wavenumber(j, n)) >= 3 * n / 8) tail = std::max(tail, a);
  }
  return head > 0.0 ? tail / head : 0.0;
}

}  // namespace spectral
}  // namespace tension2d
