#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hjlab/periodic1d.hpp"

namespace hjlab {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Periodic1D, DerivativesOfTrigonometricProfile) {
  for (double period : {1.0, 2.0}) {
    const double w = 2 * kPi / period;
    const Field1D f = Field1D::sample(64, period, [&](double x) { return std::sin(w * x) + 0.3 * std::cos(3 * w * x); });
    const Field1D d = periodic1d::derivative(f);
    const Field1D d2 = periodic1d::second_derivative(f);
    for (int i = 0; i < 64; ++i) {
      const double x = i * period / 64;
      EXPECT_NEAR(d.values[i], w * std::cos(w * x) - 0.9 * w * std::sin(3 * w * x), 1e-11);
      EXPECT_NEAR(d2.values[i], -w * w * std::sin(w * x) - 2.7 * w * w * std::cos(3 * w * x), 1e-10);
    }
  }
}

TEST(Periodic1D, HelmholtzIntegralAndMean) {
  const Field1D f = Field1D::sample(32, 1.0, [](double x) { return 2.0 + std::cos(2 * kPi * x); });
  const Field1D z = periodic1d::solve_helmholtz(f, 0.5);
  const Field1D d2 = periodic1d::second_derivative(z);
  for (int i = 0; i < 32; ++i) EXPECT_NEAR(z.values[i] - 0.5 * d2.values[i], f.values[i], 1e-12);
  EXPECT_NEAR(periodic1d::mean(f), 2.0, 1e-15);
  EXPECT_NEAR(periodic1d::integral(Field1D::sample(32, 3.0, [](double) { return 2.0; })), 6.0, 1e-14);
  EXPECT_NEAR(periodic1d::linf_norm(f), 3.0, 1e-15);
}

TEST(Periodic1D, RefineInterpolatesBandLimitedExactly) {
  auto g = [](double x) { return std::sin(2 * kPi * x) + 0.5 * std::cos(6 * kPi * x); };
  const Field1D coarse = Field1D::sample(16, 1.0, g);
  const Field1D fine = periodic1d::refine(coarse, 64);
  ASSERT_EQ(fine.n(), 64);
  for (int i = 0; i < 64; ++i) EXPECT_NEAR(fine.values[i], g(i / 64.0), 1e-13);
  EXPECT_THROW(periodic1d::refine(fine, 16), std::invalid_argument);
}

TEST(Periodic1D, Validation) {
  EXPECT_THROW(periodic1d::require_valid(Field1D{1.0, std::vector<double>(12)}), std::invalid_argument);
  EXPECT_THROW(periodic1d::require_valid(Field1D{-1.0, std::vector<double>(16)}), std::invalid_argument);
  EXPECT_NO_THROW(periodic1d::require_valid(Field1D{1.0, std::vector<double>(16)}));
}

}  // namespace
}  // namespace hjlab
