#include "hjlab/krylov.hpp"

#include <algorithm>
#include <cmath>

namespace hjlab {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

GmresResult gmres(const LinearOperator& apply_a, const LinearOperator& apply_m_inverse,
                  std::span<const double> rhs, const GmresOptions& options) {
  const std::size_t size = rhs.size();
  GmresResult result;
  result.x.assign(size, 0.0);

  const double rhs_norm = norm2(rhs);
  const double target = std::max(options.relative_tolerance * rhs_norm, options.absolute_tolerance);
  if (rhs_norm == 0.0) {
    result.converged = true;
    return result;
  }

  const int m = options.restart;
  std::vector<double> r(rhs.begin(), rhs.end());
  double beta = rhs_norm;

  while (result.iterations < options.max_iterations) {
    std::vector<std::vector<double>> basis;
    basis.reserve(m + 1);
    std::vector<std::vector<double>> hess(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m), sn(m), g(m + 1, 0.0);

    basis.emplace_back(r);
    for (double& v : basis[0]) v /= beta;
    g[0] = beta;

    int j = 0;
    for (; j < m && result.iterations < options.max_iterations; ++j) {
      ++result.iterations;
      std::vector<double> w = apply_a(apply_m_inverse(basis[j]));
      // Modified Gram-Schmidt.
      for (int i = 0; i <= j; ++i) {
        hess[i][j] = dot(w, basis[i]);
        for (std::size_t k = 0; k < size; ++k) w[k] -= hess[i][j] * basis[i][k];
      }
      hess[j + 1][j] = norm2(w);
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
        hess[i + 1][j] = -sn[i] * hess[i][j] + cs[i] * hess[i + 1][j];
        hess[i][j] = t;
      }
      const double denom = std::hypot(hess[j][j], hess[j + 1][j]);
      cs[j] = denom == 0.0 ? 1.0 : hess[j][j] / denom;
      sn[j] = denom == 0.0 ? 0.0 : hess[j + 1][j] / denom;
      const double h_next = hess[j + 1][j];
      hess[j][j] = denom;
      hess[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];

      const bool breakdown = h_next <= 1e-300;
      if (!breakdown) {
        basis.emplace_back(std::move(w));
        for (double& v : basis.back()) v /= h_next;
      }
      if (std::abs(g[j + 1]) <= target || breakdown) {
        ++j;
        break;
      }
    }

    // Back substitution for the Krylov coefficients.
    std::vector<double> y(j, 0.0);
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= hess[i][k] * y[k];
      y[i] = s / hess[i][i];
    }
    std::vector<double> update(size, 0.0);
    for (int i = 0; i < j; ++i)
      for (std::size_t k = 0; k < size; ++k) update[k] += y[i] * basis[i][k];
    const std::vector<double> correction = apply_m_inverse(update);
    for (std::size_t k = 0; k < size; ++k) result.x[k] += correction[k];

    // True residual guards against drift in the recurrence.
    const std::vector<double> ax = apply_a(result.x);
    for (std::size_t k = 0; k < size; ++k) r[k] = rhs[k] - ax[k];
    beta = norm2(r);
    result.residual_norm = beta;
    if (beta <= target) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace hjlab
