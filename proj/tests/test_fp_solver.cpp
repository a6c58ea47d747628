#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hjlab/errors.hpp"
#include "hjlab/fp_solver.hpp"

namespace hjlab {
namespace {

constexpr double kPi = std::numbers::pi;

Gradient scaled_gradient(const Field2D& u, double s) {
  Gradient g = gradient(u);
  g.x *= s;
  g.y *= s;
  return g;
}

Field2D gibbs(const Field2D& u) {
  Field2D m = u;
  for (double& v : m.values()) v = std::exp(-2.0 * v);
  m *= 1.0 / integral(m);
  return m;
}

TEST(FP, ZeroDriftGivesUniformDensity) {
  const Field2D zero(32);
  const FPSolution s = solve_fp({zero, zero});
  EXPECT_LE(linf_norm(s.m - 1.0), 1e-14);
  EXPECT_LE(s.iterations, 4);
}

TEST(FP, GradientDriftGivesGibbsDensity) {
  const int n = 128;
  const std::vector<Field2D> potentials = {
      Field2D::sample(n, 1.0, [](double x, double) { return 0.3 * std::cos(2 * kPi * x); }),
      Field2D::sample(n, 1.0, [](double x, double y) {
        return 0.2 * std::sin(2 * kPi * x) * std::cos(2 * kPi * y) + 0.1 * std::cos(4 * kPi * y);
      }),
      random_band_limited(n, 3, 7) * 0.05,
  };
  for (const Field2D& u : potentials) {
    const FPSolution s = solve_fp(scaled_gradient(u, 2.0));
    EXPECT_LE(linf_norm(s.m - gibbs(u)), 1e-8);
    EXPECT_GT(s.min_m, 0.0);
    EXPECT_LE(s.mass_error, 1e-12);
  }
}

TEST(FP, DivergenceFreeDriftKeepsUniformDensity) {
  const int n = 64;
  // b = grad-perp of a stream function.
  const Field2D psi = Field2D::sample(n, 1.0, [](double x, double y) {
    return 0.3 * std::sin(2 * kPi * x) * std::sin(4 * kPi * y) + 0.2 * std::cos(2 * kPi * (x + y));
  });
  const Gradient gp = gradient(psi);
  const Gradient b{gp.y, -gp.x};
  EXPECT_LE(linf_norm(divergence(b.x, b.y)), 1e-10);
  const FPSolution s = solve_fp(b, {.initial_m = Field2D::sample(n, 1.0, [](double x, double) {
                                       return 1.0 + 0.5 * std::cos(2 * kPi * x);
                                     })});
  EXPECT_LE(linf_norm(s.m - 1.0), 1e-8);
}

TEST(FP, StepConservesMassWithoutRenormalization) {
  const int n = 64;
  const Gradient b = scaled_gradient(random_band_limited(n, 4, 3) * 0.1, 2.0);
  Field2D m = Field2D::sample(n, 1.0, [](double x, double y) {
    return 1.0 + 0.3 * std::sin(2 * kPi * x) * std::cos(2 * kPi * y);
  });
  const double tau = fp_stable_step(b);
  const double mass0 = integral(m);
  for (int k = 0; k < 1000; ++k) m = fp_step(m, b, tau, false);
  EXPECT_LE(std::abs(integral(m) - mass0), 1e-13);
}

TEST(FP, StableStepFormula) {
  const Field2D bx = Field2D::constant(16, 3.0), by = Field2D::constant(16, 4.0);
  EXPECT_DOUBLE_EQ(fp_stable_step({bx, by}), 1.0 / 51.0);
}

TEST(FP, WeakResidualOfSingleMode) {
  // Zero drift: the residual of m = 1 + eps cos(2 pi x) is eps (2 pi)^2 cos,
  // whose H^{-1} norm is eps (2 pi)^2 / sqrt(1 + (2 pi)^2) / sqrt(2).
  const double eps = 1e-3, k2 = 4 * kPi * kPi;
  const Field2D m = Field2D::sample(32, 1.0, [&](double x, double) { return 1.0 + eps * std::cos(2 * kPi * x); });
  const Field2D zero(32);
  EXPECT_NEAR(fp_weak_residual(m, {zero, zero}), eps * k2 / std::sqrt(1 + k2) / std::sqrt(2.0), 1e-14);
  const Field2D u = random_band_limited(64, 3, 9) * 0.05;
  const Gradient b = scaled_gradient(u, 2.0);
  EXPECT_LE(fp_weak_residual(solve_fp(b).m, b), 1e-10);
}

TEST(FP, UnderResolvedDriftLosesPositivity) {
  const Field2D u = Field2D::sample(8, 1.0, [](double x, double) { return 2.0 * std::cos(2 * kPi * x); });
  try {
    solve_fp(scaled_gradient(u, 2.0));
    FAIL() << "expected positivity loss";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverFailure::kPositivityLoss);
  }
}

TEST(FP, IterationBudgetAndValidation) {
  const Gradient b = scaled_gradient(random_band_limited(64, 3, 1) * 0.3, 2.0);
  try {
    solve_fp(b, {.max_iters = 4});
    FAIL() << "expected non-convergence";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverFailure::kNonConvergence);
    EXPECT_GT(e.best_residual(), 0.0);
  }
  EXPECT_THROW(solve_fp(b, {.tol = 0.0}), std::invalid_argument);
  EXPECT_THROW(solve_fp({Field2D(16), Field2D(32)}), std::invalid_argument);
  Field2D bad(16);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(solve_fp({bad, Field2D(16)}), std::invalid_argument);
}

}  // namespace
}  // namespace hjlab
