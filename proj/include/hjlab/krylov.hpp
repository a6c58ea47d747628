#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hjlab {

using LinearOperator = std::function<std::vector<double>(std::span<const double>)>;

struct GmresOptions {
  int restart = 60;
  int max_iterations = 1500;
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 0.0;
};

struct GmresResult {
  std::vector<double> x;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

/// Restarted GMRES for A x = b with right preconditioner M: iterates on
/// A M^{-1} y = b and returns x = M^{-1} y. Starts from x = 0.
GmresResult gmres(const LinearOperator& apply_a, const LinearOperator& apply_m_inverse,
                  std::span<const double> rhs, const GmresOptions& options = {});

}  // namespace hjlab
