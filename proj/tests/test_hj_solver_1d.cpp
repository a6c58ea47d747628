#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hjlab/errors.hpp"
#include "hjlab/hj_solver.hpp"
#include "test_support.hpp"

namespace hjlab {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ScalarConvexFunction> phis() {
  return {ScalarConvexFunction::square(), ScalarConvexFunction::power(4.0), ScalarConvexFunction::smoothed_abs()};
}

TEST(ScalarFunctions, ValuesAndDerivatives) {
  const auto p3 = ScalarConvexFunction::power(3.0, 2.0);
  EXPECT_NEAR(p3(-2.0), 16.0, 1e-14);
  EXPECT_NEAR(p3.derivative(-2.0), -24.0, 1e-13);
  const auto p15 = ScalarConvexFunction::power(1.5);
  EXPECT_EQ(p15.derivative(0.0), 0.0);
  EXPECT_NEAR(p15.derivative(4.0), 3.0, 1e-12);
  const auto sa = ScalarConvexFunction::smoothed_abs();
  EXPECT_NEAR(sa(-3.0), 3.0, 1e-15);
  EXPECT_NEAR(sa(0.0), 1e-8, 1e-20);
  EXPECT_THROW(ScalarConvexFunction::power(1.0), std::invalid_argument);
}

TEST(SolveHJ1D, ZeroSource) {
  const Field1D f{1.0, std::vector<double>(64, 0.0)};
  const HJSolution1D s = solve_hj_1d(ScalarConvexFunction::square(), f);
  EXPECT_EQ(s.lambda, 0.0);
  EXPECT_EQ(periodic1d::linf_norm(s.u), 0.0);
}

TEST(SolveHJ1D, ManufacturedQuadratic) {
  const double w = 2 * kPi;
  const Field1D f = Field1D::sample(128, 1.0, [&](double x) {
    const double du = 0.2 * w * std::cos(w * x), d2u = -0.2 * w * w * std::sin(w * x);
    return -d2u + du * du;
  });
  const HJSolution1D s = solve_hj_1d(ScalarConvexFunction::square(), f);
  for (int i = 0; i < 128; ++i) EXPECT_NEAR(s.u.values[i], 0.2 * std::sin(w * i / 128.0), 1e-8);
  EXPECT_NEAR(s.lambda, 0.0, 1e-8);
}

TEST(SolveHJ1D, CubicHamiltonianResidual) {
  const Field1D f = Field1D::sample(512, 1.0, [](double x) { return std::cos(2 * kPi * x); });
  const auto h = ScalarConvexFunction::power(3.0);
  const HJSolution1D s = solve_hj_1d(h, f, 1e-10);
  EXPECT_LE(periodic1d::linf_norm(hj_residual_1d(h, f, s.u, s.lambda)), 1e-9);
  EXPECT_NEAR(periodic1d::mean(s.u), 0.0, 1e-13);
}

TEST(SolveHJ1D, NonConvergenceReported) {
  const Field1D f = testing::random_source_1d(64, 4, 3, 5.0);
  try {
    solve_hj_1d(ScalarConvexFunction::square(), f, 1e-14, 1);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverFailure::kNonConvergence);
  }
}

TEST(ConvexityAudit, ConstantSolutionIsEquality) {
  const Field1D u{2.0, std::vector<double>(32, 0.0)};
  const Field1D f{2.0, std::vector<double>(32, 0.7)};
  for (const auto& c : convexity_audit_1d(u, 0.7, f, ScalarConvexFunction::square(), phis())) {
    EXPECT_TRUE(c.pass) << c.phi;
    EXPECT_NEAR(c.lhs, c.rhs, 1e-15);
  }
  const auto c = convexity_audit_1d(u, 0.7, f, ScalarConvexFunction::square(), {ScalarConvexFunction::smoothed_abs()});
  EXPECT_NEAR(c[0].lhs, 1e-8 * 2.0, 1e-20);
}

// The inequality int Phi(h(u')) <= int Phi(f - lambda) on a seeded corpus,
// re-checked on a 4x finer grid so that a pass cannot be a resolution artifact.
TEST(ConvexityAudit, SeededCorpusPassesAtTwoResolutions) {
  const auto h = ScalarConvexFunction::square();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Field1D f = testing::random_source_1d(128, 6, seed, 5.0 * (0.2 + 0.8 * (seed % 5) / 4.0));
    const HJSolution1D s = solve_hj_1d(h, f);
    const auto coarse = convexity_audit_1d(s.u, s.lambda, f, h, phis());
    const Field1D f_fine = periodic1d::refine(f, 512);
    const HJSolution1D sf = solve_hj_1d(h, f_fine);
    const auto fine = convexity_audit_1d(sf.u, sf.lambda, f_fine, h, phis());
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      EXPECT_TRUE(coarse[k].pass) << "seed " << seed << " " << coarse[k].phi << " " << coarse[k].lhs << " > "
                                  << coarse[k].rhs;
      EXPECT_TRUE(fine[k].pass) << "seed " << seed << " " << fine[k].phi;
      EXPECT_NEAR(coarse[k].lhs, fine[k].lhs, 1e-8 * (1.0 + fine[k].lhs));
    }
  }
}

TEST(ConvexityAudit, CubicHamiltonian) {
  const auto h = ScalarConvexFunction::power(3.0);
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Field1D f = testing::random_source_1d(256, 4, seed, 3.0);
    const HJSolution1D s = solve_hj_1d(h, f);
    for (const auto& c : convexity_audit_1d(s.u, s.lambda, f, h, phis())) EXPECT_TRUE(c.pass) << c.phi;
  }
}

}  // namespace
}  // namespace hjlab
