#pragma once

// Analytic trigonometric polynomials for test oracles: values and
// derivatives are evaluated in closed form, independently of the FFT code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hjlab/field.hpp"
#include "hjlab/periodic1d.hpp"

namespace hjlab::testing {

struct TrigMode {
  int kx, ky;
  double a, b;  // a cos(phase) + b sin(phase)
};

class TrigPoly {
 public:
  TrigPoly() = default;
  explicit TrigPoly(std::vector<TrigMode> modes, double period = 1.0) : modes_(std::move(modes)), period_(period) {}

  /// Modes with 0 < max(|kx|, |ky|) <= band in a half plane, N(0, 1) weights.
  static TrigPoly random(int band, std::uint64_t seed, double period = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<TrigMode> modes;
    for (int ky = 0; ky <= band; ++ky)
      for (int kx = -band; kx <= band; ++kx) {
        if (ky == 0 && kx <= 0) continue;
        const double a = normal(rng), b = normal(rng);
        modes.push_back({kx, ky, a, b});
      }
    return TrigPoly(std::move(modes), period);
  }

  TrigPoly scaled(double s) const {
    TrigPoly p = *this;
    for (auto& m : p.modes_) {
      m.a *= s;
      m.b *= s;
    }
    return p;
  }

  /// d^{dx + dy} / dx^dx dy^dy at (x, y).
  double eval(double x, double y, int dx = 0, int dy = 0) const {
    const double w = 2.0 * std::numbers::pi / period_;
    double s = 0.0;
    for (const auto& m : modes_) {
      const double phase = w * (m.kx * x + m.ky * y);
      // d^k/dt^k of (a cos t + b sin t) rotates (a, b) by k quarter turns.
      double c = m.a, d = m.b;
      const int order = dx + dy;
      for (int k = 0; k < order; ++k) {
        const double nc = d, nd = -c;
        c = nc;
        d = nd;
      }
      const double factor = std::pow(w * m.kx, dx) * std::pow(w * m.ky, dy);
      s += factor * (c * std::cos(phase) + d * std::sin(phase));
    }
    return s;
  }

  Field2D sample(int n, int dx = 0, int dy = 0) const {
    return Field2D::sample(n, period_, [&](double x, double y) { return eval(x, y, dx, dy); });
  }

 private:
  std::vector<TrigMode> modes_;
  double period_ = 1.0;
};

inline double max_abs_diff(const Field2D& a, const Field2D& b) { return linf_norm(a - b); }

}  // namespace hjlab::testing

namespace hjlab::testing {

/// Smallest eigenvalue of the symmetric tridiagonal matrix (diag, off) by
/// Sturm-sequence bisection.
inline double lowest_tridiagonal_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off) {
  const std::size_t n = diag.size();
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  auto count_below = [&](double x) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      q = diag[i] - x - (i > 0 ? off[i - 1] * off[i - 1] / q : 0.0);
      if (q == 0.0) q = 1e-300;
      if (q < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (count_below(mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Principal eigenvalue of -v'' + (c0 + A cos(2 pi x / L)) v on [0, L),
/// from a Fourier-Galerkin truncation to |k| <= kmax.
inline double cosine_potential_ground_state(double c0, double amplitude, double period = 1.0, int kmax = 60) {
  std::vector<double> diag, off;
  const double w = 2.0 * std::numbers::pi / period;
  for (int k = -kmax; k <= kmax; ++k) diag.push_back(w * w * k * k + c0);
  off.assign(diag.size() - 1, 0.5 * amplitude);
  return lowest_tridiagonal_eigenvalue(diag, off);
}

}  // namespace hjlab::testing

namespace hjlab::testing {

/// Seeded 1D trigonometric source with modes 1..band, rescaled so that
/// max |f| = sup_norm on the sampled grid.
inline Field1D random_source_1d(int n, int band, std::uint64_t seed, double sup_norm, double period = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> a(band + 1), b(band + 1);
  for (int k = 1; k <= band; ++k) {
    a[k] = normal(rng);
    b[k] = normal(rng);
  }
  Field1D f = Field1D::sample(n, period, [&](double x) {
    double s = 0.0;
    for (int k = 1; k <= band; ++k) {
      const double t = 2.0 * std::numbers::pi * k * x / period;
      s += a[k] * std::cos(t) + b[k] * std::sin(t);
    }
    return s;
  });
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  for (double& v : f.values) v *= sup_norm / m;
  return f;
}

}  // namespace hjlab::testing
