#pragma once

// One-dimensional periodic grids on [0, L): the substrate of the 1D HJ solver.

#include <vector>

namespace hjlab {

struct Field1D {
  double period = 1.0;
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
  double spacing() const { return period / n(); }

  template <class Fn>
  static Field1D sample(int n, double period, Fn&& fn) {
    Field1D f{period, std::vector<double>(n)};
    for (int i = 0; i < n; ++i) f.values[i] = fn(i * period / n);
    return f;
  }
};

namespace periodic1d {

/// Throws std::invalid_argument unless n >= 8 is a power of two.
void require_valid(const Field1D& f);

Field1D derivative(const Field1D& f);
Field1D second_derivative(const Field1D& f);
/// (I - tau d^2/dx^2)^{-1} f.
Field1D solve_helmholtz(const Field1D& f, double tau);
double integral(const Field1D& f);
double mean(const Field1D& f);
double linf_norm(const Field1D& f);
/// Trigonometric interpolation onto a finer grid of `n_fine` points.
Field1D refine(const Field1D& f, int n_fine);

}  // namespace periodic1d
}  // namespace hjlab
