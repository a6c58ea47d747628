#include "hjlab/hj_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjlab/errors.hpp"
#include "hjlab/krylov.hpp"

namespace hjlab {
namespace {

void validate(const HJProblem& problem) {
  problem.hamiltonian.validate();
  const Field2D& f = problem.source;
  if (!f.all_finite()) throw std::invalid_argument("source must be finite");
  if (problem.hamiltonian.b0) {
    require_compatible(f, problem.hamiltonian.b0->x);
    require_compatible(f, problem.hamiltonian.b0->y);
  }
  if (problem.hamiltonian.potential) require_compatible(f, *problem.hamiltonian.potential);
}

Field2D as_field(const Field2D& like, std::vector<double> values) {
  return Field2D(like.n(), like.period(), std::move(values));
}

std::vector<double> as_vector(const Field2D& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

Field2D hj_residual(const HJProblem& problem, const Field2D& u, double lambda) {
  Field2D r = evaluate_hamiltonian(problem.hamiltonian, gradient(u));
  r -= laplacian(u);
  r += lambda;
  r -= problem.source;
  return r;
}

Field2D hj_jacobian_action(const HJProblem& problem, const Field2D& u, const Field2D& w,
                           double dlambda) {
  const Gradient drift = drift_from_hamiltonian(problem.hamiltonian, gradient(u));
  const Gradient gw = gradient(w);
  Field2D out = drift.x * gw.x + drift.y * gw.y;
  out -= laplacian(w);
  out += dlambda;
  return out;
}

HJSolution solve_hj(const HJProblem& problem, const HJOptions& options) {
  validate(problem);
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Field2D& f = problem.source;

  Field2D u = options.initial_u ? *options.initial_u : Field2D(f.n(), f.period());
  require_compatible(u, f);
  u -= mean(u);
  double lambda = mean(f - evaluate_hamiltonian(problem.hamiltonian, gradient(u)));
  Field2D r = hj_residual(problem, u, lambda);

  HJSolution sol;
  double best = linf_norm(r);
  for (int it = 0;; ++it) {
    const double r_inf = linf_norm(r);
    const double r_l2 = lp_norm(r, 2.0);
    best = std::min(best, r_inf);
    if (r_inf <= options.tol) {
      sol.u = std::move(u);
      sol.lambda = lambda;
      sol.residual_linf = r_inf;
      sol.residual_l2 = r_l2;
      sol.newton_iters = it;
      return sol;
    }
    if (it >= options.max_iters) {
      std::ostringstream msg;
      msg << "HJ Newton did not reach tol " << options.tol << " in " << options.max_iters
          << " iterations (best residual " << best << ")";
      throw SolverError(SolverFailure::kNonConvergence, msg.str(), best);
    }

    const Gradient drift = drift_from_hamiltonian(problem.hamiltonian, gradient(u));
    // Unknown z packs (w, dlambda) as (z - mean z, mean z).
    const LinearOperator apply_jacobian = [&](std::span<const double> z) {
      Field2D w = as_field(f, {z.begin(), z.end()});
      const double dl = mean(w);
      w -= dl;
      const Gradient gw = gradient(w);
      Field2D out = drift.x * gw.x + drift.y * gw.y;
      out -= laplacian(w);
      out += dl;
      return as_vector(out);
    };
    const LinearOperator precondition = [&](std::span<const double> y) {
      return as_vector(solve_helmholtz(as_field(f, {y.begin(), y.end()}), 1.0));
    };
    std::vector<double> rhs = as_vector(r);
    for (double& v : rhs) v = -v;
    GmresOptions gm;
    gm.relative_tolerance = options.krylov_tolerance;
    const GmresResult lin = gmres(apply_jacobian, precondition, rhs, gm);

    Field2D w = as_field(f, lin.x);
    const double dl = mean(w);
    w -= dl;

    double step = 1.0;
    bool accepted = false;
    bool capped = false;
    for (int h = 0; h <= options.max_halvings; ++h, step *= 0.5) {
      Field2D trial_u = u + step * w;
      if (!trial_u.all_finite() || linf_norm(trial_u) > options.blowup_cap) {
        capped = true;
        continue;
      }
      capped = false;
      const double trial_lambda = lambda + step * dl;
      if (lp_norm(hj_residual(problem, trial_u, trial_lambda), 2.0) < r_l2) {
        u = std::move(trial_u);
        u -= mean(u);
        lambda = trial_lambda;
        r = hj_residual(problem, u, lambda);
        accepted = true;
        break;
      }
    }
    sol.log.push_back({r_inf, r_l2, accepted ? step : 0.0, lin.iterations});
    if (!accepted && capped)
      throw SolverError(SolverFailure::kBlowUp, "HJ iterate exceeded the blow-up cap", best);
    if (!accepted) {
      std::ostringstream msg;
      msg << "HJ line search stalled at residual " << r_inf << " (tol " << options.tol << ")";
      throw SolverError(SolverFailure::kNonConvergence, msg.str(), best);
    }
  }
}

HJSolution continuation_solve(const HJProblem& problem, int steps, const HJOptions& options) {
  if (steps < 1) throw std::invalid_argument("continuation needs at least one step");
  HJOptions stage_options = options;
  HJSolution sol;
  std::vector<NewtonStep> log;
  int iters = 0;
  for (int s = 1; s <= steps; ++s) {
    HJProblem stage{problem.hamiltonian, problem.source * (static_cast<double>(s) / steps)};
    sol = solve_hj(stage, stage_options);
    iters += sol.newton_iters;
    log.insert(log.end(), sol.log.begin(), sol.log.end());
    stage_options.initial_u = sol.u;
  }
  sol.newton_iters = iters;
  sol.log = std::move(log);
  return sol;
}

}  // namespace hjlab
