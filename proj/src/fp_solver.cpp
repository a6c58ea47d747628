#include "hjlab/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjlab/errors.hpp"

namespace hjlab {

Field2D fp_residual(const Field2D& m, const Gradient& drift) {
  Field2D r = -laplacian(m);
  r -= divergence(drift.x * m, drift.y * m);
  return r;
}

double fp_weak_residual(const Field2D& m, const Gradient& drift) {
  return h_minus_one_norm(fp_residual(m, drift));
}

Field2D fp_step(const Field2D& m, const Gradient& drift, double tau, bool renormalize) {
  Field2D rhs = m + tau * divergence(drift.x * m, drift.y * m);
  Field2D next = solve_helmholtz(rhs, tau);
  if (renormalize) next += 1.0 / (m.period() * m.period()) - mean(next);
  return next;
}

double fp_stable_step(const Gradient& drift) {
  double b2 = 0.0;
  for (std::size_t k = 0; k < drift.x.size(); ++k) {
    const double bx = drift.x.values()[k], by = drift.y.values()[k];
    b2 = std::max(b2, bx * bx + by * by);
  }
  return 1.0 / (2.0 * b2 + 1.0);
}

FPSolution solve_fp(const Gradient& drift, const FPOptions& options) {
  require_compatible(drift.x, drift.y);
  if (!drift.x.all_finite() || !drift.y.all_finite()) throw std::invalid_argument("drift must be finite");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int n = drift.x.n();
  const double period = drift.x.period();
  const double area = period * period;
  const double tau = options.tau.value_or(fp_stable_step(drift));

  Field2D m = options.initial_m ? *options.initial_m : Field2D::constant(n, 1.0 / area, period);
  require_compatible(m, drift.x);
  m *= 1.0 / integral(m);

  double residual = lp_norm(fp_residual(m, drift), 2.0);
  double best = residual;
  int it = 0;
  // The residual is only evaluated every few steps; the update itself is
  // cheaper than the residual.
  constexpr int kCheckEvery = 4;
  while (residual > options.tol) {
    if (it >= options.max_iters) {
      std::ostringstream msg;
      msg << "FP iteration did not reach tol " << options.tol << " (best residual " << best << ")";
      throw SolverError(SolverFailure::kNonConvergence, msg.str(), best);
    }
    for (int k = 0; k < kCheckEvery; ++k, ++it) m = fp_step(m, drift, tau);
    if (!m.all_finite()) throw SolverError(SolverFailure::kNonConvergence, "FP iteration diverged", best);
    residual = lp_norm(fp_residual(m, drift), 2.0);
    best = std::min(best, residual);
  }

  FPSolution sol;
  sol.residual_l2 = residual;
  sol.min_m = min_value(m);
  sol.mass_error = std::abs(integral(m) - 1.0);
  sol.iterations = it;
  sol.m = std::move(m);
  if (sol.min_m <= 0.0) {
    std::ostringstream msg;
    msg << "FP density lost positivity (min m = " << sol.min_m << "); increase the resolution";
    throw SolverError(SolverFailure::kPositivityLoss, msg.str(), residual);
  }
  return sol;
}

}  // namespace hjlab
