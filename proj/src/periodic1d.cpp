#include "hjlab/periodic1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace hjlab::periodic1d {
namespace {

using fft::Complex;

template <class Mult>
Field1D apply_multiplier(const Field1D& f, Mult&& mult) {
  require_valid(f);
  const int n = f.n();
  std::vector<Complex> s(n / 2 + 1);
  fft::forward_1d(n, f.values.data(), s.data());
  const double scale = 2.0 * std::numbers::pi / f.period;
  for (int k = 0; k <= n / 2; ++k) s[k] *= mult(k, scale * k, k == n / 2);
  Field1D out{f.period, std::vector<double>(n)};
  fft::inverse_1d(n, s.data(), out.values.data());
  return out;
}

}  // namespace

void require_valid(const Field1D& f) {
  const int n = f.n();
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("1D grid resolution must be a power of two >= 8");
  if (!(f.period > 0.0)) throw std::invalid_argument("period must be positive");
}

Field1D derivative(const Field1D& f) {
  return apply_multiplier(f, [](int, double k, bool nyquist) { return nyquist ? Complex(0.0) : Complex(0.0, k); });
}

Field1D second_derivative(const Field1D& f) {
  return apply_multiplier(f, [](int, double k, bool) { return Complex(-k * k); });
}

Field1D solve_helmholtz(const Field1D& f, double tau) {
  return apply_multiplier(f, [tau](int, double k, bool) { return Complex(1.0 / (1.0 + tau * k * k)); });
}

double mean(const Field1D& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s / f.n();
}

double integral(const Field1D& f) { return mean(f) * f.period; }

double linf_norm(const Field1D& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

Field1D refine(const Field1D& f, int n_fine) {
  require_valid(f);
  const int n = f.n();
  if (n_fine < n) throw std::invalid_argument("refine: target grid is coarser");
  std::vector<Complex> s(n / 2 + 1), fine(n_fine / 2 + 1);
  fft::forward_1d(n, f.values.data(), s.data());
  const double ratio = static_cast<double>(n_fine) / n;
  for (int k = 0; k < n / 2; ++k) fine[k] = s[k] * ratio;
  // Split the Nyquist coefficient evenly between +-n/2 on the finer grid.
  if (n_fine > n) fine[n / 2] = 0.5 * s[n / 2] * ratio;
  else fine[n / 2] = s[n / 2];
  Field1D out{f.period, std::vector<double>(n_fine)};
  fft::inverse_1d(n_fine, fine.data(), out.values.data());
  return out;
}

}  // namespace hjlab::periodic1d
