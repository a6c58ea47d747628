#include "hjlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace hjlab {
namespace {

using fft::Complex;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// r2c spectrum: kx over the full range (outer), ky = 0..n/2 (inner).
struct HalfSpectrum {
  int n;
  double period;
  std::vector<Complex> c;

  int half() const { return n / 2 + 1; }
  Complex& at(int i, int j) { return c[static_cast<std::size_t>(i) * half() + j]; }
  Complex at(int i, int j) const { return c[static_cast<std::size_t>(i) * half() + j]; }
};

HalfSpectrum forward(const Field2D& f) {
  HalfSpectrum s{f.n(), f.period(), std::vector<Complex>(static_cast<std::size_t>(f.n()) * (f.n() / 2 + 1))};
  fft::forward_2d(f.n(), f.values().data(), s.c.data());
  return s;
}

Field2D backward(const HalfSpectrum& s) {
  Field2D f(s.n, s.period);
  fft::inverse_2d(s.n, s.c.data(), f.values().data());
  return f;
}

/// Returns the field whose spectrum is spectrum(k) * mult(kx, ky), with kx
/// signed and ky in [0, n/2].
template <class Mult>
Field2D apply_multiplier(const HalfSpectrum& s, Mult&& mult) {
  HalfSpectrum out = s;
  for (int i = 0; i < s.n; ++i) {
    const int kx = fft::wavenumber(i, s.n);
    for (int j = 0; j < s.half(); ++j) out.at(i, j) *= mult(kx, j);
  }
  return backward(out);
}

struct Wavenumbers {
  int n;
  double scale;  // 2 pi / L
  bool x_nyquist(int kx) const { return kx == -n / 2; }
  bool y_nyquist(int ky) const { return ky == n / 2; }
  Complex dx(int kx) const { return x_nyquist(kx) ? 0.0 : Complex(0.0, scale * kx); }
  Complex dy(int ky) const { return y_nyquist(ky) ? 0.0 : Complex(0.0, scale * ky); }
  double k2(int kx, int ky) const { return scale * scale * (double(kx) * kx + double(ky) * ky); }
};

Wavenumbers wavenumbers_of(const HalfSpectrum& s) { return {s.n, kTwoPi / s.period}; }

}  // namespace

// ---------------------------------------------------------------------------
// Field2D

Field2D::Field2D(int n, double period) : n_(n), period_(period) {
  require_valid_resolution(n);
  if (!(period > 0.0) || !std::isfinite(period))
    throw std::invalid_argument("period must be positive and finite");
  values_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

Field2D::Field2D(int n, double period, std::vector<double> values) : Field2D(n, period) {
  if (values.size() != values_.size())
    throw std::invalid_argument("expected " + std::to_string(values_.size()) + " samples, got " +
                                std::to_string(values.size()));
  values_ = std::move(values);
  if (!all_finite()) throw std::invalid_argument("field samples must be finite");
}

Field2D Field2D::constant(int n, double value, double period) {
  Field2D f(n, period);
  std::fill(f.values_.begin(), f.values_.end(), value);
  return f;
}

bool Field2D::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field2D& Field2D::operator+=(const Field2D& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += rhs.values_[k];
  return *this;
}

Field2D& Field2D::operator-=(const Field2D& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= rhs.values_[k];
  return *this;
}

Field2D& Field2D::operator*=(const Field2D& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] *= rhs.values_[k];
  return *this;
}

Field2D& Field2D::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

Field2D& Field2D::operator-=(double c) {
  for (double& v : values_) v -= c;
  return *this;
}

Field2D& Field2D::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// SpectralField

SpectralField::SpectralField(int n, double period)
    : n_(n), period_(period), coeffs_(static_cast<std::size_t>(n) * n) {
  require_valid_resolution(n);
}

std::size_t SpectralField::wrap(int kx, int ky) const {
  if (kx < -n_ / 2 || kx >= n_ / 2 || ky < -n_ / 2 || ky >= n_ / 2)
    throw std::out_of_range("wavenumber outside [-n/2, n/2)");
  const int i = kx < 0 ? kx + n_ : kx;
  const int j = ky < 0 ? ky + n_ : ky;
  return static_cast<std::size_t>(i) * n_ + j;
}

// ---------------------------------------------------------------------------

void require_valid_resolution(int n) {
  if (n < 8 || !is_power_of_two(n))
    throw std::invalid_argument("grid resolution must be a power of two >= 8, got " +
                                std::to_string(n));
}

void require_compatible(const Field2D& a, const Field2D& b) {
  if (!a.compatible(b)) throw std::invalid_argument("fields live on different grids");
}

SpectralField transform(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const int n = field.n();
  SpectralField out(n, field.period());
  for (int i = 0; i < n; ++i) {
    const int kx = fft::wavenumber(i, n);
    for (int j = 0; j < n; ++j) {
      const int ky = fft::wavenumber(j, n);
      if (j <= n / 2) {
        out.at(kx, ky) = s.at(i, j);
      } else {
        // c(kx, ky) = conj(c(-kx, -ky)), and -ky lies in the stored half.
        const int mi = (n - i) % n;
        out.at(kx, ky) = std::conj(s.at(mi, n - j));
      }
    }
  }
  return out;
}

Field2D inverse(const SpectralField& spec) {
  const int n = spec.n();
  HalfSpectrum s{n, spec.period(), std::vector<Complex>(static_cast<std::size_t>(n) * (n / 2 + 1))};
  for (int i = 0; i < n; ++i) {
    const int kx = fft::wavenumber(i, n);
    for (int j = 0; j <= n / 2; ++j) {
      const int ky = j == n / 2 ? -n / 2 : j;
      s.at(i, j) = spec.at(kx, ky);
    }
  }
  return backward(s);
}

Gradient gradient(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return {apply_multiplier(s, [&](int kx, int) { return w.dx(kx); }),
          apply_multiplier(s, [&](int, int ky) { return w.dy(ky); })};
}

Field2D laplacian(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return apply_multiplier(s, [&](int kx, int ky) { return Complex(-w.k2(kx, ky)); });
}

Hessian hessian(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return {apply_multiplier(s, [&](int kx, int) { return Complex(-w.scale * w.scale * kx * kx); }),
          apply_multiplier(s, [&](int kx, int ky) { return w.dx(kx) * w.dy(ky); }),
          apply_multiplier(s, [&](int, int ky) { return Complex(-w.scale * w.scale * ky * ky); })};
}

Field2D inverse_laplacian(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return apply_multiplier(s, [&](int kx, int ky) {
    return (kx == 0 && ky == 0) ? Complex(0.0) : Complex(-1.0 / w.k2(kx, ky));
  });
}

Field2D solve_helmholtz(const Field2D& field, double tau) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return apply_multiplier(s, [&](int kx, int ky) { return Complex(1.0 / (1.0 + tau * w.k2(kx, ky))); });
}

Field2D divergence(const Field2D& vx, const Field2D& vy) {
  require_compatible(vx, vy);
  HalfSpectrum sx = forward(vx);
  const HalfSpectrum sy = forward(vy);
  const Wavenumbers w = wavenumbers_of(sx);
  for (int i = 0; i < sx.n; ++i) {
    const int kx = fft::wavenumber(i, sx.n);
    for (int j = 0; j < sx.half(); ++j) sx.at(i, j) = w.dx(kx) * sx.at(i, j) + w.dy(j) * sy.at(i, j);
  }
  sx.at(0, 0) = 0.0;
  return backward(sx);
}

Field2D truncate_two_thirds(const Field2D& field) {
  const int kmax = (field.n() - 1) / 3;
  return apply_multiplier(forward(field), [&](int kx, int ky) {
    return (std::abs(kx) <= kmax && ky <= kmax) ? Complex(1.0) : Complex(0.0);
  });
}

Field2D dealiased_product(const Field2D& a, const Field2D& b) {
  require_compatible(a, b);
  return truncate_two_thirds(a) * truncate_two_thirds(b);
}

Field2D gaussian_smooth(const Field2D& field, double eps) {
  if (eps < 0.0) throw std::invalid_argument("mollifier width must be nonnegative");
  if (eps == 0.0) return field;
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  return apply_multiplier(s, [&](int kx, int ky) { return Complex(std::exp(-0.5 * eps * eps * w.k2(kx, ky))); });
}

int effective_bandwidth(const Field2D& field, double rel_tol) {
  const HalfSpectrum s = forward(field);
  double peak = 0.0;
  for (const Complex& c : s.c) peak = std::max(peak, std::abs(c));
  int band = 0;
  if (peak == 0.0) return 0;
  for (int i = 0; i < s.n; ++i) {
    const int kx = fft::wavenumber(i, s.n);
    for (int j = 0; j < s.half(); ++j)
      if (std::abs(s.at(i, j)) > rel_tol * peak) band = std::max({band, std::abs(kx), j});
  }
  return band;
}

double mean(const Field2D& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += v;
  return sum / static_cast<double>(field.size());
}

double integral(const Field2D& field) { return mean(field) * field.period() * field.period(); }

double lp_norm(const Field2D& field, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("L^p norm requires p >= 1");
  if (std::isinf(p)) return linf_norm(field);
  const double cell = field.spacing() * field.spacing();
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : field.values()) sum += v * v;
    return std::sqrt(sum * cell);
  }
  for (double v : field.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * cell, 1.0 / p);
}

double linf_norm(const Field2D& field) {
  double m = 0.0;
  for (double v : field.values()) m = std::max(m, std::abs(v));
  return m;
}

double min_value(const Field2D& field) {
  return *std::min_element(field.values().begin(), field.values().end());
}

double max_value(const Field2D& field) {
  return *std::max_element(field.values().begin(), field.values().end());
}

double inner(const Field2D& a, const Field2D& b) {
  require_compatible(a, b);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a.values()[k] * b.values()[k];
  return sum * a.spacing() * a.spacing();
}

double parseval_l2_squared(const SpectralField& spec) {
  double sum = 0.0;
  for (const Complex& c : spec.coefficients()) sum += std::norm(c);
  const double n2 = static_cast<double>(spec.n()) * spec.n();
  return sum / (n2 * n2) * spec.period() * spec.period();
}

double hessian_l2(const Field2D& field) {
  const Hessian h = hessian(field);
  return std::sqrt(inner(h.xx, h.xx) + 2.0 * inner(h.xy, h.xy) + inner(h.yy, h.yy));
}

double h_minus_one_norm(const Field2D& field) {
  const HalfSpectrum s = forward(field);
  const Wavenumbers w = wavenumbers_of(s);
  const double n2 = static_cast<double>(s.n) * s.n;
  double sum = 0.0;
  for (int i = 0; i < s.n; ++i) {
    const int kx = fft::wavenumber(i, s.n);
    for (int j = 0; j < s.half(); ++j) {
      // Columns 1..n/2-1 stand for two conjugate modes each.
      const double weight = (j == 0 || j == s.n / 2) ? 1.0 : 2.0;
      sum += weight * std::norm(s.at(i, j)) / (1.0 + w.k2(kx, j));
    }
  }
  return std::sqrt(sum / (n2 * n2)) * s.period;
}

double holder_quotient(const Field2D& field, double beta, std::size_t pairs, std::uint64_t seed) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("Hoelder exponent must lie in (0, 1]");
  const int n = field.n();
  const double h = field.spacing();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> node(0, n - 1);
  double best = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const int i1 = node(rng), j1 = node(rng), i2 = node(rng), j2 = node(rng);
    if (i1 == i2 && j1 == j2) continue;
    const int di = std::min(std::abs(i1 - i2), n - std::abs(i1 - i2));
    const int dj = std::min(std::abs(j1 - j2), n - std::abs(j1 - j2));
    const double d = h * std::hypot(static_cast<double>(di), static_cast<double>(dj));
    best = std::max(best, std::abs(field(i1, j1) - field(i2, j2)) / std::pow(d, beta));
  }
  return best;
}

NormReport norm_report(const Field2D& field, double q, std::span<const double> betas,
                       std::size_t pairs, std::uint64_t seed) {
  NormReport r;
  for (double p : {1.0, 2.0, 4.0, q}) r.lp[p] = lp_norm(field, p);
  r.w22 = hessian_l2(field);
  for (double b : betas) r.holder[b] = holder_quotient(field, b, pairs, seed);
  return r;
}

Field2D random_band_limited(int n, int bandwidth, std::uint64_t seed, double period) {
  require_valid_resolution(n);
  if (bandwidth < 1 || bandwidth >= n / 2)
    throw std::invalid_argument("bandwidth must lie in [1, n/2)");
  HalfSpectrum s{n, period, std::vector<Complex>(static_cast<std::size_t>(n) * (n / 2 + 1))};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double n2 = static_cast<double>(n) * n;
  for (int ky = 0; ky <= bandwidth; ++ky) {
    for (int kx = -bandwidth; kx <= bandwidth; ++kx) {
      if (ky == 0 && kx <= 0) continue;
      const double re = normal(rng), im = normal(rng);
      const Complex c = 0.5 * n2 * Complex(re, im);
      const int i = kx < 0 ? kx + n : kx;
      s.at(i, ky) = c;
      if (ky == 0) s.at((n - i) % n, 0) = std::conj(c);
    }
  }
  return backward(s);
}

}  // namespace hjlab
