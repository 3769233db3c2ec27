#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tension2d/oracles.hpp"
#include "tension2d/tension.hpp"

using namespace tension2d;
using t2test::kSeed;
using t2test::max_diff;

namespace {

VectorGridFunction table1_samples(const PeriodicGrid& g) {
  // F . X_c = 4 + sin t, F . dX_c = 4 - cos t
  return VectorGridFunction::sample(g, [](double t) {
    const Vec2 xc(std::cos(t), std::sin(t)), dxc(-std::sin(t), std::cos(t));
    return Vec2((4.0 + std::sin(t)) * xc + (4.0 - std::cos(t)) * dxc);
  });
}

FrameFourierForce random_frame(std::mt19937_64& rng, int n_max) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FrameFourierForce f;
  for (auto* v : {&f.a, &f.b, &f.c, &f.d}) {
    v->resize(n_max + 1);
    for (auto& x : *v) x = u(rng);
    (*v)[0] = (v == &f.b || v == &f.d) ? 0.0 : (*v)[0];
  }
  return f;
}

}  // namespace

TEST(CircleSigma, Table1FromDecomposition) {
  PeriodicGrid g(64);
  auto c = circle(g);
  auto [f_tan, f_nor] = tension::decompose_rhs(c, table1_samples(g));
  const FrameFourierForce frame = oracles::frame_from_components(f_nor, f_tan, 4);
  EXPECT_NEAR(frame.a[0], 4.0, 1e-14);
  EXPECT_NEAR(frame.b[1], 1.0, 1e-14);
  EXPECT_NEAR(frame.c[0], 4.0, 1e-14);
  EXPECT_NEAR(frame.c[1], -1.0, 1e-14);
  const auto sigma = oracles::circle_sigma(frame, g);
  EXPECT_LT(max_diff(sigma, GridFunction::sample(g, [](double t) { return std::sin(t); })), 1e-13);
}

TEST(CircleSigma, Examples) {
  PeriodicGrid g(32);
  EXPECT_EQ(oracles::circle_sigma(FrameFourierForce{{0.0, 0.0, 1.0}, {}, {}, {}}, g).max_abs(), 0.0);
  auto s = oracles::circle_sigma(FrameFourierForce{{}, {}, {}, {0.0, 0.0, 1.0}}, g);
  EXPECT_LT(max_diff(s, GridFunction::sample(g, [](double t) { return 0.5 * std::cos(2 * t); })), 1e-15);
}

TEST(CircleSigma, MatchesMeanZeroSolve) {
  std::mt19937_64 rng(kSeed);
  PeriodicGrid g(64);
  auto c = circle(g);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_frame(rng, 8);
    auto sol = tension::solve_tension(c, ForceDensity(f), SolveMode::MeanZero);
    EXPECT_LT(max_diff(sol.sigma, oracles::circle_sigma(f, g)), 1e-10);
  }
}

TEST(Q0ClosedForm, Examples) {
  PeriodicGrid g(64);
  for (int n = 2; n <= 6; ++n) {
    auto f = VectorGridFunction::sample(g, [n](double t) { return Vec2(std::sin(n * t) * Vec2(-std::sin(t), std::cos(t))); });
    EXPECT_LT(max_diff(oracles::Q0_closed_form(f), GridFunction::sample(g, [n](double t) { return 0.25 * std::cos(n * t); })),
              1e-14);
  }
  auto f1 = VectorGridFunction::sample(g, [](double t) { return Vec2(std::cos(t) * Vec2(std::cos(t), std::sin(t))); });
  EXPECT_LT(max_diff(oracles::Q0_closed_form(f1), GridFunction::sample(g, [](double t) { return std::cos(t) / 8.0; })),
            1e-14);
  auto f2 = VectorGridFunction::sample(g, [](double t) { return Vec2(-std::sin(t), std::cos(t)); });
  EXPECT_LT(oracles::Q0_closed_form(f2).max_abs(), 1e-14);
}

TEST(Q0ClosedForm, MatchesApplyQForAllFrameModes) {
  PeriodicGrid g(64);
  auto c = circle(g);
  for (int n = 0; n <= 10; ++n) {
    for (int part = 0; part < 4; ++part) {
      FrameFourierForce f;
      auto& v = part == 0 ? f.a : part == 1 ? f.b : part == 2 ? f.c : f.d;
      if (n == 0 && (part == 1 || part == 3)) continue;
      v.assign(n + 1, 0.0);
      v[n] = 1.0;
      auto samples = f.evaluate(g);
      EXPECT_LT(max_diff(tension::apply_Q(c, samples), oracles::Q0_closed_form(samples)), 1e-10)
          << "n=" << n << " part=" << part;
    }
  }
}

TEST(Toland, Examples) {
  PeriodicGrid g(64);
  auto check = [&](auto fn, double tol) {
    const auto s = oracles::toland_check(GridFunction::sample(g, fn));
    EXPECT_LT(max_diff(s.lhs, s.rhs), tol);
    return s;
  };
  auto s1 = check([](double t) { return std::cos(t); }, 1e-10);
  EXPECT_NEAR(s1.lhs[7], 0.5, 1e-13);
  auto s0 = check([](double) { return 3.0; }, 1e-14);
  EXPECT_LT(s0.lhs.max_abs(), 1e-13);
  EXPECT_LT(s0.rhs.max_abs(), 1e-13);
  check([](double t) { return std::cos(t) + 0.5 * std::sin(3 * t); }, 1e-9);
}

TEST(SplitQ, MatchesApplyQ) {
  PeriodicGrid g(64);
  auto c = circle(g);
  auto f = VectorGridFunction::sample(g, [](double t) { return Vec2(std::sin(2 * t) * Vec2(-std::sin(t), std::cos(t))); });
  EXPECT_LT(max_diff(oracles::split_Q_check(c, f), tension::apply_Q(c, f)), 1e-9);

  std::mt19937_64 rng(kSeed + 1);
  auto e = ellipse(g, 1.5, 1.0 / 1.5);
  for (int trial = 0; trial < 3; ++trial) {
    auto r = t2test::random_trig_vec(g, 12, rng);
    EXPECT_LT(max_diff(oracles::split_Q_check(e, r), tension::apply_Q(e, r)), 1e-8);
  }
  EXPECT_EQ(oracles::split_Q_check(e, VectorGridFunction(g)).max_abs(), 0.0);
}

TEST(HilbertTables, HoldToRoundOff) {
  const auto res = oracles::hilbert_residuals(PeriodicGrid(64));
  EXPECT_GE(res.size(), 30u);
  for (const auto& r : res) EXPECT_LT(r.residual, 1e-12) << r.name;
}

TEST(HilbertTables, TamperedSignIsCaught) {
  auto broken = [](const GridFunction& f) { return -1.0 * spectral::hilbert_transform(f); };
  for (const auto& r : oracles::hilbert_residuals(PeriodicGrid(64), broken)) {
    if (r.table == "hilbert_01" && r.name.find("cos2t Xc") != std::string::npos) {
      EXPECT_NEAR(r.residual, 2.0, 1e-12);
    }
    EXPECT_GT(r.residual, 0.5) << r.name;
  }
}

TEST(TrigCoefficients, RoundTrip) {
  PeriodicGrid g(32);
  auto f = GridFunction::sample(g, [](double t) { return 1.5 - 2.0 * std::cos(3 * t) + 0.25 * std::sin(7 * t); });
  const auto c = oracles::trig_coefficients(f, 10);
  EXPECT_NEAR(c.cos[0], 1.5, 1e-15);
  EXPECT_NEAR(c.cos[3], -2.0, 1e-14);
  EXPECT_NEAR(c.sin[7], 0.25, 1e-14);
  EXPECT_THROW(oracles::trig_coefficients(f, 16), std::invalid_argument);
}
