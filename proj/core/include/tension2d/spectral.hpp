#pragma once

// Uniform periodic grid on [0, 2pi) and exact Fourier-multiplier calculus.
//
// FFT convention: the forward transform is unnormalized, the inverse carries
// the 1/N factor. Wavenumbers are k = 0, 1, ..., N/2-1, N/2, -(N/2-1), ..., -1;
// the Nyquist mode k = N/2 is annihilated by the derivative and the Hilbert
// transform so that real input always produces real output.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace tension2d {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

class PeriodicGrid {
 public:
  /// Throws std::invalid_argument unless n is even and n >= 8.
  explicit PeriodicGrid(int n);

  int size() const { return n_; }
  double spacing() const;
  double node(int j) const;
  std::vector<double> nodes() const;

  bool operator==(const PeriodicGrid&) const = default;

 private:
  int n_;
};

class GridFunction {
 public:
  GridFunction(PeriodicGrid grid, std::vector<double> values);
  /// Zero function on the grid.
  explicit GridFunction(PeriodicGrid grid);

  static GridFunction sample(const PeriodicGrid& grid,
                             const std::function<double(double)>& f);
  static GridFunction constant(const PeriodicGrid& grid, double c);

  const PeriodicGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  double operator[](int j) const { return values_[j]; }
  double& operator[](int j) { return values_[j]; }
  std::span<const double> values() const { return values_; }
  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return {values_.data(), static_cast<Eigen::Index>(values_.size())};
  }
  static GridFunction from_vector(const PeriodicGrid& grid,
                                  const Eigen::VectorXd& v);

  double max_abs() const;
  double mean() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double s);

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, double s);
GridFunction operator*(double s, GridFunction a);
/// Pointwise product.
GridFunction operator*(const GridFunction& a, const GridFunction& b);

class VectorGridFunction {
 public:
  VectorGridFunction(PeriodicGrid grid, std::vector<Vec2> values);
  explicit VectorGridFunction(PeriodicGrid grid);
  VectorGridFunction(const GridFunction& x, const GridFunction& y);

  static VectorGridFunction sample(const PeriodicGrid& grid,
                                   const std::function<Vec2(double)>& f);

  const PeriodicGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  const Vec2& operator[](int j) const { return values_[j]; }
  Vec2& operator[](int j) { return values_[j]; }
  std::span<const Vec2> values() const { return values_; }

  GridFunction component(int c) const;
  /// Stacked [x_0..x_{N-1}, y_0..y_{N-1}] layout used by operator matrices.
  Eigen::VectorXd stacked() const;
  static VectorGridFunction from_stacked(const PeriodicGrid& grid,
                                         const Eigen::VectorXd& v);

  /// max_j |v_j| (Euclidean norm per node).
  double max_norm() const;

  VectorGridFunction& operator+=(const VectorGridFunction& other);
  VectorGridFunction& operator-=(const VectorGridFunction& other);
  VectorGridFunction& operator*=(double s);

 private:
  PeriodicGrid grid_;
  std::vector<Vec2> values_;
};

VectorGridFunction operator+(VectorGridFunction a, const VectorGridFunction& b);
VectorGridFunction operator-(VectorGridFunction a, const VectorGridFunction& b);
VectorGridFunction operator*(VectorGridFunction a, double s);
VectorGridFunction operator*(double s, VectorGridFunction a);
/// Scalar field times vector field, pointwise.
VectorGridFunction operator*(const GridFunction& s, const VectorGridFunction& v);
/// Pointwise dot product.
GridFunction dot(const VectorGridFunction& a, const VectorGridFunction& b);

namespace spectral {

/// Signed wavenumber of FFT slot j on an N-point grid (N/2 for Nyquist).
int wavenumber(int j, int n);

std::vector<std::complex<double>> forward_fft(std::span<const double> values);
/// Real part of the normalized inverse transform.
std::vector<double> inverse_fft_real(std::span<const std::complex<double>> coeffs);

/// Apply a real-valued or imaginary multiplier m(k) mode by mode.
GridFunction apply_multiplier(const GridFunction& f,
                              const std::function<std::complex<double>(int k, int n)>& m);

/// d/dtheta via ik (Nyquist -> 0).
GridFunction fourier_derivative(const GridFunction& f);
VectorGridFunction fourier_derivative(const VectorGridFunction& f);

/// Periodic Hilbert transform, multiplier -i sign(k) (zero and Nyquist -> 0).
GridFunction hilbert_transform(const GridFunction& f);
VectorGridFunction hilbert_transform(const VectorGridFunction& f);

/// H d/dtheta, multiplier |k| (Nyquist -> 0).
GridFunction hilbert_dtheta(const GridFunction& f);

/// (1/2pi) int -log|2 sin((theta-theta')/2)| f(theta') dtheta', applied exactly
/// as the multiplier 1/(2|k|) for k != 0 and 0 for k = 0.
GridFunction log_kernel_multiplier(const GridFunction& f);
VectorGridFunction log_kernel_multiplier(const VectorGridFunction& f);

/// Dense N x N matrix of a linear grid operator, built column by column.
Eigen::MatrixXd operator_matrix(const PeriodicGrid& grid,
                                const std::function<GridFunction(const GridFunction&)>& op);
Eigen::MatrixXd derivative_matrix(const PeriodicGrid& grid);
Eigen::MatrixXd log_kernel_matrix(const PeriodicGrid& grid);

/// Evaluate the trigonometric interpolant of f at an arbitrary angle.
double interpolate(const GridFunction& f, double theta);
Vec2 interpolate(const VectorGridFunction& f, double theta);

/// Trapezoid rule on [0, 2pi): (2pi/N) sum f_j.
double integrate(const GridFunction& f);
Vec2 integrate(const VectorGridFunction& f);
/// Trapezoid L2 inner product.
double inner(const GridFunction& f, const GridFunction& g);
double inner(const VectorGridFunction& f, const VectorGridFunction& g);

/// Relative magnitude of the top quarter of the spectrum, a resolution check.
double spectral_tail(const GridFunction& f);

}  // namespace spectral
}  // namespace tension2d
