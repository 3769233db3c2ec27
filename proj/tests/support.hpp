#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tension2d/curve.hpp"
#include "tension2d/spectral.hpp"

namespace t2test {

using namespace tension2d;

inline constexpr std::uint64_t kSeed = 20240611;

/// Trigonometric polynomial with uniform random coefficients in [-1, 1].
inline GridFunction random_trig(const PeriodicGrid& grid, int max_mode, std::mt19937_64& rng,
                                bool with_mean = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(max_mode + 1), b(max_mode + 1);
  for (int k = 0; k <= max_mode; ++k) {
    a[k] = u(rng);
    b[k] = u(rng);
  }
  if (!with_mean) a[0] = 0.0;
  return GridFunction::sample(grid, [&](double t) {
    double v = a[0];
    for (int k = 1; k <= max_mode; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    return v;
  });
}

inline VectorGridFunction random_trig_vec(const PeriodicGrid& grid, int max_mode,
                                          std::mt19937_64& rng, bool with_mean = true) {
  auto x = random_trig(grid, max_mode, rng, with_mean);
  auto y = random_trig(grid, max_mode, rng, with_mean);
  return {x, y};
}

/// Smooth star-shaped curve: (1 + eps g) X_c with random g of modes 2..max_mode.
inline PerturbationSpec random_shape(std::mt19937_64& rng, int max_mode = 5, double eps = 0.15) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PerturbationSpec s;
  s.g_cos.assign(max_mode, 0.0);
  s.g_sin.assign(max_mode, 0.0);
  for (int n = 2; n <= max_mode; ++n) {
    s.g_cos[n - 1] = u(rng) / n;
    s.g_sin[n - 1] = u(rng) / n;
  }
  s.epsilon = eps;
  return s;
}

inline double max_diff(const GridFunction& a, const GridFunction& b) { return (a - b).max_abs(); }
inline double max_diff(const VectorGridFunction& a, const VectorGridFunction& b) {
  return (a - b).max_norm();
}

}  // namespace t2test
