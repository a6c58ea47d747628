#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hjlab/field.hpp"
#include "test_support.hpp"

namespace hjlab {
namespace {

using testing::TrigPoly;
constexpr double kPi = std::numbers::pi;

Field2D sin_x(int n, double period = 1.0) {
  return Field2D::sample(n, period, [&](double x, double) { return std::sin(2 * kPi * x / period); });
}

TEST(Field, RejectsBadResolutions) {
  EXPECT_THROW(Field2D(12), std::invalid_argument);
  EXPECT_THROW(Field2D(4), std::invalid_argument);
  EXPECT_THROW(Field2D(0), std::invalid_argument);
  EXPECT_THROW(Field2D(16, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(Field2D(8));
  EXPECT_THROW(Field2D(8, 1.0, std::vector<double>(63)), std::invalid_argument);
  EXPECT_THROW(require_compatible(Field2D(8), Field2D(16)), std::invalid_argument);
  EXPECT_THROW(require_compatible(Field2D(8), Field2D(8, 2.0)), std::invalid_argument);
}

TEST(Field, RejectsNonFiniteSamples) {
  std::vector<double> v(64, 0.0);
  v[5] = std::nan("");
  EXPECT_THROW(Field2D(8, 1.0, v), std::invalid_argument);
}

TEST(Transform, ConstantHasOnlyMeanMode) {
  const int n = 16;
  const SpectralField s = transform(Field2D::constant(n, 2.5));
  for (int kx = -n / 2; kx < n / 2; ++kx)
    for (int ky = -n / 2; ky < n / 2; ++ky) {
      const double expected = (kx == 0 && ky == 0) ? 2.5 * n * n : 0.0;
      EXPECT_NEAR(std::abs(s.at(kx, ky) - std::complex<double>(expected)), 0.0, 1e-10);
    }
}

TEST(Transform, SingleModeHasTwoCoefficients) {
  const int n = 32;
  const SpectralField s = transform(sin_x(n));
  int nonzero = 0;
  for (int kx = -n / 2; kx < n / 2; ++kx)
    for (int ky = -n / 2; ky < n / 2; ++ky)
      if (std::abs(s.at(kx, ky)) > 1e-9) {
        ++nonzero;
        EXPECT_EQ(std::abs(kx), 1);
        EXPECT_EQ(ky, 0);
      }
  EXPECT_EQ(nonzero, 2);
  // sin = (e^{it} - e^{-it}) / 2i
  EXPECT_NEAR(s.at(1, 0).imag(), -0.5 * n * n, 1e-9);
  EXPECT_NEAR(s.at(-1, 0).imag(), 0.5 * n * n, 1e-9);
}

TEST(Transform, RoundTripAndConjugateSymmetry) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field2D f = random_band_limited(64, 12, seed);
    const SpectralField s = transform(f);
    EXPECT_LE(linf_norm(inverse(s) - f), 1e-12 * (1.0 + linf_norm(f)));
    double scale = 0.0;
    for (auto c : s.coefficients()) scale = std::max(scale, std::abs(c));
    const SpectralField s2 = transform(inverse(s));
    for (int kx = -32; kx < 32; ++kx)
      for (int ky = -32; ky < 32; ++ky) {
        EXPECT_LE(std::abs(s2.at(kx, ky) - s.at(kx, ky)), 1e-12 * scale);
        if (kx > -32 && ky > -32) EXPECT_LE(std::abs(s.at(kx, ky) - std::conj(s.at(-kx, -ky))), 1e-12 * scale);
      }
  }
}

TEST(Transform, ParsevalMatchesQuadrature) {
  for (double period : {1.0, 2.5}) {
    const Field2D f = random_band_limited(32, 6, 7, period);
    const double direct = inner(f, f);
    EXPECT_NEAR(parseval_l2_squared(transform(f)) / direct, 1.0, 1e-12);
  }
}

TEST(Derivatives, ConstantHasZeroGradient) {
  const Gradient g = gradient(Field2D::constant(16, 3.0));
  EXPECT_EQ(linf_norm(g.x), 0.0);
  EXPECT_EQ(linf_norm(g.y), 0.0);
}

TEST(Derivatives, LaplacianOfSineIsEigen) {
  const Field2D s = sin_x(64);
  EXPECT_LE(linf_norm(laplacian(s) + 4 * kPi * kPi * s), 1e-10);
}

TEST(Derivatives, MatchAnalyticDerivativesOfTrigPolynomial) {
  for (double period : {1.0, 3.0}) {
    const TrigPoly p = TrigPoly::random(6, 11, period);
    const int n = 32;
    const Field2D u = p.sample(n);
    const Gradient g = gradient(u);
    const Hessian h = hessian(u);
    const double scale = linf_norm(p.sample(n, 2, 0)) + 1.0;
    EXPECT_LE(linf_norm(g.x - p.sample(n, 1, 0)), 1e-11 * scale);
    EXPECT_LE(linf_norm(g.y - p.sample(n, 0, 1)), 1e-11 * scale);
    EXPECT_LE(linf_norm(h.xx - p.sample(n, 2, 0)), 1e-11 * scale);
    EXPECT_LE(linf_norm(h.xy - p.sample(n, 1, 1)), 1e-11 * scale);
    EXPECT_LE(linf_norm(h.yy - p.sample(n, 0, 2)), 1e-11 * scale);
    EXPECT_LE(linf_norm(laplacian(u) - h.xx - h.yy), 1e-11 * scale);
    EXPECT_LE(linf_norm(divergence(g.x, g.y) - laplacian(u)), 1e-11 * scale);
  }
}

// Centered finite differences of the same analytic field at two resolutions:
// the discrepancy must fall like h^2.
TEST(Derivatives, HessianAgreesWithFiniteDifferencesAtSecondOrder) {
  const TrigPoly p = TrigPoly::random(4, 5);
  auto fd_error = [&](int n) {
    const Field2D u = p.sample(n);
    const Hessian h = hessian(u);
    const double dx = 1.0 / n;
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int ip = (i + 1) % n, im = (i + n - 1) % n, jp = (j + 1) % n, jm = (j + n - 1) % n;
        const double uxx = (u(ip, j) - 2 * u(i, j) + u(im, j)) / (dx * dx);
        const double uyy = (u(i, jp) - 2 * u(i, j) + u(i, jm)) / (dx * dx);
        const double uxy = (u(ip, jp) - u(ip, jm) - u(im, jp) + u(im, jm)) / (4 * dx * dx);
        err = std::max({err, std::abs(uxx - h.xx(i, j)), std::abs(uyy - h.yy(i, j)), std::abs(uxy - h.xy(i, j))});
      }
    return err;
  };
  const double e64 = fd_error(64), e128 = fd_error(128);
  EXPECT_LT(e128, e64);
  EXPECT_NEAR(e64 / e128, 4.0, 0.4);
}

TEST(Derivatives, IntegrationByParts) {
  const Field2D a = random_band_limited(32, 8, 1), b = random_band_limited(32, 8, 2);
  const Gradient ga = gradient(a), gb = gradient(b);
  const double scale = 1.0 + std::abs(inner(ga.x, b));
  EXPECT_LE(std::abs(inner(ga.x, b) + inner(a, gb.x)), 1e-12 * scale);
  EXPECT_LE(std::abs(inner(ga.y, b) + inner(a, gb.y)), 1e-12 * scale);
}

TEST(Derivatives, HessianNormEqualsLaplacianNorm) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Field2D u = random_band_limited(64, 20, seed);
    const Hessian h = hessian(u);
    const double d2 = inner(h.xx, h.xx) + 2 * inner(h.xy, h.xy) + inner(h.yy, h.yy);
    const Field2D lap = laplacian(u);
    EXPECT_NEAR(d2 / inner(lap, lap), 1.0, 1e-10);
    EXPECT_NEAR(hessian_l2(u) * hessian_l2(u) / d2, 1.0, 1e-10);
  }
}

TEST(Derivatives, InverseLaplacianAndHelmholtz) {
  const Field2D f = random_band_limited(32, 8, 9) + 4.0;
  const Field2D w = inverse_laplacian(f);
  EXPECT_NEAR(mean(w), 0.0, 1e-14);
  EXPECT_LE(linf_norm(laplacian(w) - (f - mean(f))), 1e-10);
  const Field2D z = solve_helmholtz(f, 0.3);
  EXPECT_LE(linf_norm(z - 0.3 * laplacian(z) - f), 1e-10);
}

TEST(Dealiasing, OneTimesFieldIsTruncation) {
  const Field2D b = random_band_limited(32, 15, 4);
  const Field2D one = Field2D::constant(32, 1.0);
  EXPECT_LE(linf_norm(dealiased_product(one, b) - truncate_two_thirds(b)), 1e-13);
  EXPECT_GT(linf_norm(truncate_two_thirds(b) - b), 1e-3);  // modes above 10 are removed
}

TEST(Dealiasing, SineSquared) {
  const Field2D s = sin_x(32);
  const Field2D expected =
      Field2D::sample(32, 1.0, [](double x, double) { return 0.5 * (1 - std::cos(4 * kPi * x)); });
  EXPECT_LE(linf_norm(dealiased_product(s, s) - expected), 1e-14);
}

// Oracle: the product evaluated pointwise on the doubled grid (where it is
// fully resolved) and restricted to the coarse nodes.
TEST(Dealiasing, MatchesFineGridProduct) {
  const int n = 64;
  const int band = (n - 1) / 3;
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const TrigPoly a = TrigPoly::random(band, seed).scaled(0.05), b = TrigPoly::random(band, seed + 100).scaled(0.05);
    const Field2D fine = a.sample(2 * n) * b.sample(2 * n);
    Field2D restricted(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) restricted(i, j) = fine(2 * i, 2 * j);
    const Field2D prod = dealiased_product(a.sample(n), b.sample(n));
    EXPECT_LE(linf_norm(prod - restricted), 1e-12 * (1.0 + linf_norm(restricted)));
  }
}

TEST(Norms, ElementaryIntegrals) {
  EXPECT_NEAR(lp_norm(Field2D::constant(16, 1.0), 2.0), 1.0, 1e-15);
  const Field2D s = sin_x(64);
  EXPECT_NEAR(std::pow(lp_norm(s, 2.0), 2), 0.5, 1e-14);
  EXPECT_NEAR(std::pow(lp_norm(s, 4.0), 4), 3.0 / 8.0, 1e-14);
  EXPECT_NEAR(mean(s), 0.0, 1e-15);
  EXPECT_NEAR(mean(Field2D::constant(16, 3.0, 2.0)), 3.0, 1e-15);
  EXPECT_NEAR(integral(Field2D::constant(16, 3.0, 2.0)), 12.0, 1e-13);
  EXPECT_THROW(lp_norm(s, 0.5), std::invalid_argument);
}

TEST(Norms, L1BoundedBySupTimesArea) {
  const Field2D f = random_band_limited(32, 5, 3, 2.0);
  EXPECT_LE(lp_norm(f, 1.0), 4.0 * linf_norm(f) + 1e-14);
  const double betas[] = {0.5};
  const NormReport r = norm_report(f, 6.0, betas, 2000);
  for (const auto& [p, v] : r.lp) EXPECT_GE(v, 0.0);
  EXPECT_EQ(r.lp.size(), 4u);
  EXPECT_GT(r.w22, 0.0);
  EXPECT_GT(r.holder.at(0.5), 0.0);
}

TEST(Norms, HMinusOneOfLaplacianIsGradientNorm) {
  // ||Delta w||_{H^{-1}} for the dual of the full W^{1,2} norm equals
  // sqrt(sum |k|^4/(1+|k|^2) |w_k|^2); check against a single mode.
  const Field2D w = sin_x(32);
  const double k2 = 4 * kPi * kPi;
  EXPECT_NEAR(h_minus_one_norm(laplacian(w)), std::sqrt(k2 * k2 / (1 + k2) * 0.5), 1e-12);
}

TEST(Holder, ConstantIsZeroAndSineIsLipschitz) {
  EXPECT_EQ(holder_quotient(Field2D::constant(32, 2.0), 0.5), 0.0);
  const double q = holder_quotient(sin_x(128), 1.0);
  EXPECT_LE(q, 2 * kPi);
  EXPECT_GT(q, 0.9 * 2 * kPi);
}

TEST(Holder, MonotoneInBetaOnUnitTorus) {
  // All periodic distances on the unit torus are <= sqrt(2)/2 < 1.
  const Field2D f = random_band_limited(64, 6, 17);
  double prev = 0.0;
  for (double beta : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    const double q = holder_quotient(f, beta, 5000, 42);
    EXPECT_GE(q, prev);
    prev = q;
  }
}

TEST(Holder, DeterministicAndValidated) {
  const Field2D f = random_band_limited(32, 4, 1);
  EXPECT_EQ(holder_quotient(f, 0.5, 1000, 3), holder_quotient(f, 0.5, 1000, 3));
  EXPECT_THROW(holder_quotient(f, 0.0), std::invalid_argument);
  EXPECT_THROW(holder_quotient(f, 1.5), std::invalid_argument);
}

TEST(Smoothing, GaussianPreservesMassAndDampsModes) {
  const Field2D f = random_band_limited(32, 8, 2) + 1.0;
  const Field2D g = gaussian_smooth(f, 0.05);
  EXPECT_NEAR(mean(g), mean(f), 1e-14);
  EXPECT_LT(lp_norm(g - mean(g), 2.0), lp_norm(f - mean(f), 2.0));
  const Field2D s = sin_x(32);
  const double damp = std::exp(-0.5 * 0.05 * 0.05 * 4 * kPi * kPi);
  EXPECT_LE(linf_norm(gaussian_smooth(s, 0.05) - damp * s), 1e-14);
  EXPECT_THROW(gaussian_smooth(f, -1.0), std::invalid_argument);
}

TEST(RandomField, BandLimitedAndMeanZero) {
  const Field2D f = random_band_limited(64, 5, 8);
  EXPECT_EQ(effective_bandwidth(f), 5);
  EXPECT_NEAR(mean(f), 0.0, 1e-14);
  EXPECT_EQ(linf_norm(f - random_band_limited(64, 5, 8)), 0.0);
  EXPECT_THROW(random_band_limited(16, 8, 0), std::invalid_argument);
}

}  // namespace
}  // namespace hjlab
