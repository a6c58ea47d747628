#pragma once

// Periodic N x N grids on the flat torus [0, L)^2 and the pseudospectral
// calculus used by every solver in the library.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace hjlab {

/// Real scalar field sampled at the nodes (i L/n, j L/n) of an n x n grid.
/// Samples are stored row-major with the x index outermost.
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(int n, double period = 1.0);
  Field2D(int n, double period, std::vector<double> values);

  static Field2D constant(int n, double value, double period = 1.0);

  /// Samples fn(x, y) at every grid node.
  template <class Fn>
  static Field2D sample(int n, double period, Fn&& fn) {
    Field2D f(n, period);
    const double h = period / n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i, j) = fn(i * h, j * h);
    return f;
  }

  int n() const { return n_; }
  double period() const { return period_; }
  double spacing() const { return period_ / n_; }
  std::size_t size() const { return values_.size(); }

  double operator()(int i, int j) const { return values_[index(i, j)]; }
  double& operator()(int i, int j) { return values_[index(i, j)]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool all_finite() const;
  bool compatible(const Field2D& other) const {
    return n_ == other.n_ && period_ == other.period_;
  }

  Field2D& operator+=(const Field2D& rhs);
  Field2D& operator-=(const Field2D& rhs);
  Field2D& operator*=(const Field2D& rhs);
  Field2D& operator+=(double c);
  Field2D& operator-=(double c);
  Field2D& operator*=(double c);

  friend Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
  friend Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
  friend Field2D operator*(Field2D a, const Field2D& b) { return a *= b; }
  friend Field2D operator+(Field2D a, double c) { return a += c; }
  friend Field2D operator-(Field2D a, double c) { return a -= c; }
  friend Field2D operator*(Field2D a, double c) { return a *= c; }
  friend Field2D operator*(double c, Field2D a) { return a *= c; }
  friend Field2D operator-(Field2D a) { return a *= -1.0; }

  /// Applies fn to every sample and returns the result.
  template <class Fn>
  Field2D map(Fn&& fn) const {
    Field2D out(*this);
    for (double& v : out.values_) v = fn(v);
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  double period_ = 1.0;
  std::vector<double> values_;
};

/// Full complex spectrum of a real field, unnormalized forward convention:
/// a constant c maps to the single coefficient c n^2 at k = (0, 0).
class SpectralField {
 public:
  SpectralField(int n, double period);

  int n() const { return n_; }
  double period() const { return period_; }

  /// Wavenumbers kx, ky in [-n/2, n/2).
  std::complex<double> at(int kx, int ky) const { return coeffs_[wrap(kx, ky)]; }
  std::complex<double>& at(int kx, int ky) { return coeffs_[wrap(kx, ky)]; }

  std::span<const std::complex<double>> coefficients() const { return coeffs_; }

 private:
  std::size_t wrap(int kx, int ky) const;

  int n_;
  double period_;
  std::vector<std::complex<double>> coeffs_;
};

struct Gradient {
  Field2D x;
  Field2D y;
};

struct Hessian {
  Field2D xx;
  Field2D xy;
  Field2D yy;
};

struct NormReport {
  std::map<double, double> lp;
  double w22 = 0.0;
  std::map<double, double> holder;
};

/// Throws std::invalid_argument unless n >= 8 is a power of two.
void require_valid_resolution(int n);
/// Throws std::invalid_argument when the grids differ.
void require_compatible(const Field2D& a, const Field2D& b);

SpectralField transform(const Field2D& field);
Field2D inverse(const SpectralField& spec);

Gradient gradient(const Field2D& field);
Field2D laplacian(const Field2D& field);
Hessian hessian(const Field2D& field);
/// Mean-zero solution w of Delta w = field - mean(field).
Field2D inverse_laplacian(const Field2D& field);
/// (I - tau Delta)^{-1} field.
Field2D solve_helmholtz(const Field2D& field, double tau);
/// Spectral divergence of (vx, vy).
Field2D divergence(const Field2D& vx, const Field2D& vy);

/// Zeroes every mode with |kx| or |ky| above (n - 1) / 3.
Field2D truncate_two_thirds(const Field2D& field);
/// Pointwise product of the 2/3-truncated inputs.
Field2D dealiased_product(const Field2D& a, const Field2D& b);
/// Multiplies each mode by exp(-2 pi^2 eps^2 |k|^2): convolution with a
/// Gaussian of standard deviation eps (periodized). Mass preserving.
Field2D gaussian_smooth(const Field2D& field, double eps);
/// Largest |kx|, |ky| among modes whose magnitude exceeds rel_tol times the
/// largest coefficient.
int effective_bandwidth(const Field2D& field, double rel_tol = 1e-13);

double mean(const Field2D& field);
double integral(const Field2D& field);
double lp_norm(const Field2D& field, double p);
double linf_norm(const Field2D& field);
double min_value(const Field2D& field);
double max_value(const Field2D& field);
/// Integral of a*b by the rectangle rule.
double inner(const Field2D& a, const Field2D& b);
/// Sum of |c_k|^2 over the full spectrum scaled to equal the squared L2 norm.
double parseval_l2_squared(const SpectralField& spec);
/// ||D^2 u||_{L^2}, via the spectrum.
double hessian_l2(const Field2D& field);
/// Dual norm of the residual against W^{1,2} test functions.
double h_minus_one_norm(const Field2D& field);

/// Largest |g(x) - g(y)| / d(x, y)^beta over `pairs` seeded random node
/// pairs, d the periodic Euclidean distance.
double holder_quotient(const Field2D& field, double beta, std::size_t pairs = 100000,
                       std::uint64_t seed = 0);

NormReport norm_report(const Field2D& field, double q, std::span<const double> betas,
                       std::size_t pairs = 100000, std::uint64_t seed = 0);

/// Random real field with modes confined to |kx|, |ky| <= bandwidth and zero
/// mean, coefficients drawn from a standard normal with the given seed.
Field2D random_band_limited(int n, int bandwidth, std::uint64_t seed, double period = 1.0);

}  // namespace hjlab
