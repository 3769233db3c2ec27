#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "support.hpp"
#include "tension2d/errors.hpp"
#include "tension2d/oracles.hpp"
#include "tension2d/tension.hpp"

using namespace tension2d;
using t2test::kSeed;
using t2test::max_diff;

namespace {

FrameFourierForce table1() { return {{4.0}, {0.0, 1.0}, {4.0, -1.0}, {}}; }

GridFunction sinn(const PeriodicGrid& g, int n) {
  return GridFunction::sample(g, [n](double t) { return std::sin(n * t); });
}

VectorGridFunction frame_mode(const PeriodicGrid& g, int n, bool cosine, bool tangential) {
  return VectorGridFunction::sample(g, [=](double t) {
    const double a = cosine ? std::cos(n * t) : std::sin(n * t);
    return Vec2(tangential ? a * Vec2(-std::sin(t), std::cos(t)) : a * Vec2(std::cos(t), std::sin(t)));
  });
}

/// Smooth mean-zero force resembling a bending force: d^2/dtheta^2 (kappa n).
VectorGridFunction bending_like(const ClosedCurve& c) {
  return spectral::fourier_derivative(spectral::fourier_derivative(c.curvature() * c.normal()));
}

}  // namespace

TEST(ApplyQ, CircleExamples) {
  PeriodicGrid g(64);
  auto c = circle(g);
  for (int n = 2; n <= 10; ++n) {
    auto q = tension::apply_Q(c, frame_mode(g, n, true, true));
    EXPECT_LT(max_diff(q, -0.25 * sinn(g, n)), 1e-12) << n;
  }
  EXPECT_LT(tension::apply_Q(c, c.position()).max_abs(), 1e-13);
}

TEST(ApplyQ, IntegralVanishesOnCircles) {
  std::mt19937_64 rng(kSeed);
  for (double r : {1.0, 0.7, 2.0}) {
    PeriodicGrid g(64);
    auto c = circle(g, r, Vec2(0.4, -0.3));
    auto f = t2test::random_trig_vec(g, 12, rng);
    EXPECT_NEAR(spectral::integrate(tension::apply_Q(c, f)), 0.0, 1e-10) << r;
  }
}

// Away from circles the integral of Q[F] is not zero: for F = d(tau) it is
// <1, L 1>, strictly negative because L is negative definite.
TEST(ApplyQ, IntegralOnNonCircleEqualsConstantModeEnergy) {
  PeriodicGrid g(64);
  auto e = ellipse(g, 1.5, 1.0 / 1.5);
  const GridFunction one = GridFunction::constant(g, 1.0);
  const double integral = spectral::integrate(tension::apply_Q(e, spectral::fourier_derivative(e.tangent())));
  EXPECT_NEAR(integral, spectral::inner(one, tension::apply_L(e, one)), 1e-12);
  EXPECT_LT(integral, -1e-3);
}

TEST(ApplyQ, CircleMatchesClosedForm) {
  std::mt19937_64 rng(kSeed + 1);
  PeriodicGrid g(64);
  auto c = circle(g);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = t2test::random_trig_vec(g, 15, rng);
    EXPECT_LT(max_diff(tension::apply_Q(c, f), oracles::Q0_closed_form(f)), 1e-10);
  }
}

TEST(ApplyL, CircleExamples) {
  PeriodicGrid g(64);
  auto c = circle(g);
  for (int n = 1; n <= 20; ++n) {
    EXPECT_LT(max_diff(tension::apply_L(c, sinn(g, n)), -(n / 4.0) * sinn(g, n)), 1e-11) << n;
  }
  EXPECT_LT(tension::apply_L(c, GridFunction::constant(g, 1.0)).max_abs(), 1e-13);
}

TEST(ApplyL, Linear) {
  std::mt19937_64 rng(kSeed + 2);
  PeriodicGrid g(64);
  auto c = perturbed_circle(t2test::random_shape(rng), g);
  auto a = t2test::random_trig(g, 10, rng), b = t2test::random_trig(g, 10, rng);
  EXPECT_LT(max_diff(tension::apply_L(c, 2.0 * a - 0.5 * b),
                     2.0 * tension::apply_L(c, a) - 0.5 * tension::apply_L(c, b)),
            1e-12);
}

TEST(ApplyL, NegativeSemidefinite) {
  std::mt19937_64 rng(kSeed + 3);
  for (int trial = 0; trial < 20; ++trial) {
    PeriodicGrid g(64);
    auto c = perturbed_circle(t2test::random_shape(rng), g);
    auto s = t2test::random_trig(g, 12, rng);
    EXPECT_LE(spectral::inner(s, tension::apply_L(c, s)), 1e-10);
  }
}

TEST(AssembleL, MatchesApplyL) {
  std::mt19937_64 rng(kSeed + 4);
  PeriodicGrid g(64);
  auto c = perturbed_circle(t2test::random_shape(rng), g);
  const OperatorMatrix m = tension::assemble_L(c);
  const auto s3 = sinn(g, 3);
  const Eigen::VectorXd via_matrix = m.entries * s3.as_vector();
  EXPECT_LT((via_matrix - tension::apply_L(c, s3).as_vector()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(m.weight, g.spacing(), 1e-16);
}

TEST(AssembleL, CircleEigenvalues) {
  PeriodicGrid g(32);
  const OperatorMatrix m = tension::assemble_L(circle(g));
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (m.entries + m.entries.transpose()))
                           .eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  EXPECT_NEAR(ev[0], 0.0, 1e-12);
  // Sorting interleaves aliased high modes, so match values rather than positions.
  auto count_near = [&](double v) {
    return std::count_if(ev.data(), ev.data() + ev.size(), [v](double e) { return std::abs(e - v) <= 1e-10; });
  };
  for (int n = 1; n <= 10; ++n) EXPECT_GE(count_near(-n / 4.0), 2) << n;
}

TEST(AssembleL, NearlySymmetricOnSmoothCurves) {
  std::mt19937_64 rng(kSeed + 5);
  for (int trial = 0; trial < 3; ++trial) {
    auto c = perturbed_circle(t2test::random_shape(rng), PeriodicGrid(64));
    EXPECT_LE(tension::assemble_L(c).asymmetry, 1e-8);
  }
  EXPECT_LE(tension::assemble_L(ellipse(PeriodicGrid(64), 1.5, 1.0 / 1.5)).asymmetry, 1e-8);
}

TEST(AssembleQ, MatchesApplyQ) {
  std::mt19937_64 rng(kSeed + 6);
  PeriodicGrid g(32);
  auto c = perturbed_circle(t2test::random_shape(rng), g);
  auto f = t2test::random_trig_vec(g, 10, rng);
  const Eigen::VectorXd q = tension::assemble_Q(c) * f.stacked();
  EXPECT_LT((q - tension::apply_Q(c, f).as_vector()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SolveTension, Table1OnUnitCircle) {
  for (int n : {32, 64}) {
    PeriodicGrid g(n);
    auto sol = tension::solve_tension(circle(g), ForceDensity(table1()), SolveMode::MeanZero);
    EXPECT_EQ(sol.mode, SolveMode::MeanZero);
    auto sigma = GridFunction::sample(g, [](double t) { return std::sin(t); });
    auto u = VectorGridFunction::sample(g, [](double t) { return Vec2(-2 * std::sin(t), 2 * std::cos(t)); });
    EXPECT_LT(max_diff(sol.sigma, sigma), 1e-10);
    EXPECT_LT(max_diff(sol.interface_velocity, u), 1e-10);
    EXPECT_LT(std::abs(spectral::integrate(sol.sigma)), 1e-10 * sol.sigma.max_abs());
    EXPECT_LT(sol.residual_inext, 1e-10);
  }
}

TEST(SolveTension, AutoPicksMeanZeroOnCircleAndPlainOtherwise) {
  PeriodicGrid g(32);
  EXPECT_EQ(tension::solve_tension(circle(g), ForceDensity(table1())).mode, SolveMode::MeanZero);
  auto e = ellipse(g, 1.5, 1.0 / 1.5);
  EXPECT_EQ(tension::solve_tension(e, ForceDensity(bending_like(e))).mode, SolveMode::Plain);
}

TEST(SolveTension, PlainOnCircleIsSingular) {
  EXPECT_THROW(tension::solve_tension(circle(PeriodicGrid(32)), ForceDensity(table1()), SolveMode::Plain),
               SingularOperatorError);
}

TEST(SolveTension, EllipseResidualAndGridStability) {
  // 64 nodes do not yet resolve the second derivative of the curvature at this aspect ratio.
  PeriodicGrid g1(128), g2(256);
  auto e1 = ellipse(g1, 1.5, 1.0 / 1.5);
  auto e2 = ellipse(g2, 1.5, 1.0 / 1.5);
  auto s1 = tension::solve_tension(e1, ForceDensity(bending_like(e1)));
  auto s2 = tension::solve_tension(e2, ForceDensity(bending_like(e2)));
  EXPECT_LE(s1.residual_inext, 1e-8);
  EXPECT_LE(s2.residual_inext, 1e-8);
  double change = 0.0;
  for (int j = 0; j < g1.size(); ++j) change = std::max(change, std::abs(s1.sigma[j] - s2.sigma[2 * j]));
  EXPECT_LE(change, 1e-8 * s2.sigma.max_abs());
  EXPECT_FALSE(s1.ill_conditioned);
}

TEST(SolveTension, SolveApplyConsistency) {
  std::mt19937_64 rng(kSeed + 7);
  for (int trial = 0; trial < 5; ++trial) {
    PeriodicGrid g(64);
    auto c = perturbed_circle(t2test::random_shape(rng), g);
    auto f = t2test::random_trig_vec(g, 10, rng);
    auto sol = tension::solve_tension(c, ForceDensity(f), SolveMode::Plain);
    auto qf = tension::apply_Q(c, f);
    EXPECT_LE((tension::apply_L(c, sol.sigma) + qf).max_abs(), 1e-8 * qf.max_abs());
  }
}

TEST(SolveTension, NearCircleWarnsIllConditioned) {
  auto c = perturbed_circle(PerturbationSpec{0.5, {0.0, 0.5}, {}, 0.005}, PeriodicGrid(64));
  auto sol = tension::solve_tension(c, ForceDensity(table1()));
  EXPECT_EQ(sol.mode, SolveMode::Plain);
  EXPECT_TRUE(sol.ill_conditioned);
  EXPECT_GT(sol.condition_estimate, 1e6);
  ASSERT_FALSE(sol.warnings.empty());
  EXPECT_NE(sol.warnings.back().find("IllConditioned"), std::string::npos);
}

TEST(SolveTension, MeanZeroOffCircleReportsMultiplier) {
  PeriodicGrid g(64);
  auto e = ellipse(g, 1.5, 1.0 / 1.5);
  auto sol = tension::solve_tension(e, ForceDensity(bending_like(e)), SolveMode::MeanZero);
  EXPECT_NEAR(spectral::integrate(sol.sigma), 0.0, 1e-10 * sol.sigma.max_abs());
  EXPECT_GT(std::abs(sol.constraint_multiplier), 0.0);
  EXPECT_FALSE(sol.warnings.empty());
}

// sigma is a physical field: solving in theta and in arclength parametrization
// gives the same values at the same points once F is converted per unit
// parameter.
TEST(SolveTension, ReparametrizationConsistency) {
  PeriodicGrid g(128);
  auto e = ellipse(g, 1.5, 1.0 / 1.5);
  auto arc = reparametrize_by_arclength(e);
  auto per_length = [](const Vec2& x) { return Vec2(x.x() * x.x() - 0.5 + x.y(), x.x() * x.y()); };
  auto force_on = [&](const ClosedCurve& c) {
    VectorGridFunction f(c.grid());
    for (int j = 0; j < c.size(); ++j) f[j] = per_length(c.position()[j]) * c.speed()[j];
    return f;
  };
  auto s_theta = tension::solve_tension(e, ForceDensity(force_on(e)), SolveMode::Plain);
  auto s_arc = tension::solve_tension(arc.curve, ForceDensity(force_on(arc.curve)), SolveMode::Plain);
  double diff = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    diff = std::max(diff, std::abs(s_arc.sigma[j] - spectral::interpolate(s_theta.sigma, arc.theta[j])));
  }
  EXPECT_LE(diff, 1e-6);
}

TEST(DecomposeRhs, CircleFrames) {
  PeriodicGrid g(32);
  auto c = circle(g);
  auto [f1, f2] = tension::decompose_rhs(c, c.position());
  EXPECT_LT(f1.max_abs(), 1e-14);
  EXPECT_LT(max_diff(f2, GridFunction::constant(g, 1.0)), 1e-14);
  auto [t1, t2] = tension::decompose_rhs(c, c.dposition());
  EXPECT_LT(max_diff(t1, GridFunction::constant(g, 1.0)), 1e-13);
  EXPECT_LT(t2.max_abs(), 1e-13);
}

TEST(DecomposeRhs, Reconstruction) {
  std::mt19937_64 rng(kSeed + 8);
  PeriodicGrid g(64);
  auto c = perturbed_circle(t2test::random_shape(rng), g);
  auto f = t2test::random_trig_vec(g, 10, rng);
  auto [f1, f2] = tension::decompose_rhs(c, f);
  EXPECT_LT(max_diff(f1 * c.tangent() + f2 * c.normal(), f), 1e-14 * std::max(1.0, f.max_norm()));
}

TEST(ForceDensity, FrameAndSamplesAgree) {
  PeriodicGrid g(32);
  ForceDensity frame(table1());
  ForceDensity raw(table1().evaluate(g));
  EXPECT_TRUE(frame.is_frame());
  EXPECT_FALSE(raw.is_frame());
  EXPECT_LT(max_diff(frame.samples(g), raw.samples(g)), 1e-15);
  EXPECT_THROW(raw.samples(PeriodicGrid(64)), std::invalid_argument);
}

TEST(ForceDensity, MeanZeroDetection) {
  PeriodicGrid g(32);
  EXPECT_TRUE(ForceDensity(FrameFourierForce{{0.0, 0.0, 1.0}, {}, {}, {}}).is_mean_zero(g));
  EXPECT_TRUE(ForceDensity(FrameFourierForce{{4.0}, {}, {4.0}, {}}).is_mean_zero(g));
  // cos t X_c = (1 + cos 2t, sin 2t) / 2 has mean (1/2, 0)
  EXPECT_FALSE(ForceDensity(FrameFourierForce{{0.0, 1.0}, {}, {}, {}}).is_mean_zero(g));
}

TEST(SolveMode, RoundTrip) {
  for (auto m : {SolveMode::Auto, SolveMode::Plain, SolveMode::MeanZero}) {
    EXPECT_EQ(solve_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(solve_mode_from_string("lu"), std::invalid_argument);
}
