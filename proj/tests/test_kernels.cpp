#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tension2d/errors.hpp"
#include "tension2d/kernels.hpp"

using namespace tension2d;
using t2test::kSeed;

namespace {
constexpr double kPi = std::numbers::pi;

Vec2 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Vec2 r(u(rng), u(rng));
  return r.norm() < 1e-3 ? Vec2(1.0, 0.5) : r;
}
}  // namespace

TEST(Stokeslet, Examples) {
  Mat2 a = kernels::stokeslet(Vec2(1.0, 0.0));
  Mat2 ea;
  ea << 1.0, 0.0, 0.0, 0.0;
  EXPECT_LT((a - ea / (4.0 * kPi)).norm(), 1e-16);

  Mat2 b = kernels::stokeslet(Vec2(0.0, 2.0));
  Mat2 eb;
  eb << -std::log(2.0), 0.0, 0.0, 1.0 - std::log(2.0);
  EXPECT_LT((b - eb / (4.0 * kPi)).norm(), 1e-16);
}

TEST(Stokeslet, EvenAndTraceIdentity) {
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 20; ++i) {
    const Vec2 r = random_point(rng);
    EXPECT_LT((kernels::stokeslet(r) - kernels::stokeslet(-r)).norm(), 1e-16);
    EXPECT_NEAR((4.0 * kPi * kernels::stokeslet(r)).trace(), -2.0 * std::log(r.norm()) + 1.0, 1e-14);
  }
}

TEST(Stokeslet, SingularPointThrows) {
  EXPECT_THROW(kernels::stokeslet(Vec2::Zero()), SingularPointError);
  EXPECT_THROW(kernels::pressure_kernel(Vec2(1e-15, 0.0)), SingularPointError);
  EXPECT_THROW(kernels::stresslet(Vec2::Zero()), SingularPointError);
}

TEST(PressureKernel, Example) {
  EXPECT_LT((kernels::pressure_kernel(Vec2(0.0, 1.0)) - Vec2(0.0, 0.5 / kPi)).norm(), 1e-16);
}

TEST(Stresslet, ValueAtUnitX) {
  const Stresslet t = kernels::stresslet(Vec2(1.0, 0.0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double expect = (i == 0 && j == 0 && k == 0) ? -1.0 / kPi : 0.0;
        EXPECT_NEAR(t(i, j, k), expect, 1e-16);
      }
}

TEST(Stresslet, SymmetricHomogeneousAndRankReduction) {
  std::mt19937_64 rng(kSeed + 1);
  for (int n = 0; n < 20; ++n) {
    const Vec2 r = random_point(rng);
    const Stresslet t = kernels::stresslet(r);
    const Stresslet t2 = kernels::stresslet(2.0 * r);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          EXPECT_NEAR(t(i, j, k), t(j, i, k), 1e-15);
          EXPECT_NEAR(t(i, j, k), t(k, j, i), 1e-15);
          EXPECT_NEAR(t2(i, j, k), 0.5 * t(i, j, k), 1e-15);
        }
    const Mat2 c = t.contract(r / r.norm());
    const Mat2 expect = -(r * r.transpose()) / (kPi * std::pow(r.norm(), 3));
    EXPECT_LT((c - expect).norm(), 1e-14 * std::max(1.0, expect.norm()));
  }
}

TEST(CotRegularization, Examples) {
  EXPECT_EQ(kernels::cot_regularization(1.0, 1.0), 0.0);
  EXPECT_NEAR(kernels::cot_regularization(1.0 + 1e-7, 1.0), 0.0, 1e-8);
  EXPECT_NEAR(kernels::cot_regularization(kPi, 0.0), -1.0 / kPi, 1e-15);
  for (double d : {0.3, 1.1, 2.9, 1e-5}) {
    EXPECT_NEAR(kernels::cot_regularization(0.4 + d, 0.4), -kernels::cot_regularization(0.4, 0.4 + d),
                1e-14);
  }
}

TEST(CotRegularization, SmoothAcrossTaylorSwitch) {
  // Both sides of the series cutoff agree with the closed form.
  for (double d : {5e-5, 9.99e-5, 1.01e-4, 2e-4}) {
    const double closed = 0.5 / std::tan(0.5 * d) - 1.0 / d;
    EXPECT_NEAR(kernels::cot_regularization(d, 0.0), closed, 1e-11);
    EXPECT_NEAR(kernels::cot_regularization(d, 0.0), -d / 12.0, 1e-11);
  }
}

TEST(CotRegularization, LinearBound) {
  double c0 = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double d = kPi * i / 2000.0;
    c0 = std::max(c0, std::abs(kernels::cot_regularization(d, 0.0)) / d);
  }
  EXPECT_LE(c0, 0.12);
}
