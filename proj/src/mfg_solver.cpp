#include "hjlab/mfg_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hjlab/errors.hpp"
#include "hjlab/fp_solver.hpp"
#include "hjlab/hj_solver.hpp"

namespace hjlab {

void CouplingSpec::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("coupling sigma must be positive (defocusing only)");
  if (!(alpha > 0.0)) throw std::invalid_argument("coupling alpha must be positive");
  if (!(mollify_eps >= 0.0)) throw std::invalid_argument("mollifier width must be nonnegative");
}

Field2D CouplingSpec::apply(const Field2D& m) const {
  const Field2D smoothed = gaussian_smooth(gaussian_smooth(m, mollify_eps), mollify_eps);
  const double s = sigma, a = alpha;
  return smoothed.map([s, a](double v) { return s * std::pow(std::max(v, 0.0), a); });
}

void MFGProblem::validate() const {
  hamiltonian.validate();
  coupling.validate();
  require_valid_resolution(n);
  if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must lie in (0, 1]");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Field2D grid(n, period);
  if (hamiltonian.potential) require_compatible(grid, *hamiltonian.potential);
  if (hamiltonian.b0) require_compatible(grid, hamiltonian.b0->x);
  if (initial_m) {
    require_compatible(grid, *initial_m);
    if (min_value(*initial_m) <= 0.0) throw std::invalid_argument("initial density must be positive");
  }
  if (initial_u) require_compatible(grid, *initial_u);
}

MFGResiduals mfg_residuals(const MFGProblem& problem, const Field2D& u, double lambda, const Field2D& m) {
  const HJProblem hj{problem.hamiltonian, problem.coupling.apply(m)};
  const Gradient drift = drift_from_hamiltonian(problem.hamiltonian, gradient(u));
  return {linf_norm(hj_residual(hj, u, lambda)), fp_weak_residual(m, drift), std::abs(integral(m) - 1.0),
          min_value(m)};
}

MFGSolution solve_mfg(const MFGProblem& problem) {
  problem.validate();
  const int n = problem.n;

  Field2D m = problem.initial_m ? *problem.initial_m : Field2D::constant(n, 1.0, problem.period);
  m *= 1.0 / integral(m);
  Field2D u = problem.initial_u ? *problem.initial_u : Field2D(n, problem.period);

  HJOptions hj_options;
  hj_options.tol = 0.1 * problem.tol;
  FPOptions fp_options;
  fp_options.tol = 0.1 * problem.tol;

  MFGSolution sol;
  double theta = problem.damping;
  double previous_gap = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  std::vector<double> gaps;

  for (int k = 1; k <= problem.max_outer; ++k) {
    hj_options.initial_u = u;
    const HJSolution hj = solve_hj({problem.hamiltonian, problem.coupling.apply(m)}, hj_options);
    u = hj.u;
    const Gradient drift = drift_from_hamiltonian(problem.hamiltonian, gradient(u));
    fp_options.initial_m = m;
    const FPSolution fp = solve_fp(drift, fp_options);

    const double gap = linf_norm(fp.m - m);
    const MFGResiduals res = mfg_residuals(problem, u, hj.lambda, fp.m);
    gaps.push_back(gap);
    sol.history.push_back({gap, res.hj, res.fp, hj.lambda, theta});

    if (gap <= problem.tol && res.hj <= problem.tol && res.fp <= problem.tol) {
      sol.u = std::move(u);
      sol.lambda = hj.lambda;
      sol.m = fp.m;
      sol.outer_iters = k;
      sol.residual_hj = res.hj;
      sol.residual_fp = res.fp;
      sol.fixpoint_gap = gap;
      return sol;
    }

    growth_streak = gap > previous_gap ? growth_streak + 1 : 0;
    if (growth_streak >= 3 && theta > 1.0 / 64.0) {
      theta = std::max(0.5 * theta, 1.0 / 64.0);
      growth_streak = 0;
    }
    previous_gap = gap;
    m = (1.0 - theta) * m + theta * fp.m;
  }

  std::ostringstream msg;
  msg << "MFG Picard iteration did not converge in " << problem.max_outer << " outer iterations (last gap "
      << (gaps.empty() ? 0.0 : gaps.back()) << ")";
  throw SolverError(SolverFailure::kNonConvergence, msg.str(), gaps.empty() ? 0.0 : gaps.back(), gaps);
}

// ---------------------------------------------------------------------------

namespace {

double rayleigh_quotient(const Field2D& v, const Field2D& weight) {
  const Gradient g = gradient(v);
  const double num = inner(g.x, g.x) + inner(g.y, g.y) + inner(weight * v, v);
  return num / inner(v, v);
}

}  // namespace

MFGSolution solve_mfg_hopf_cole(double alpha, double sigma, const std::optional<Field2D>& potential,
                                const HopfColeOptions& options) {
  // sigma = 0 is admitted here: it disables the coupling and leaves the
  // linear eigenproblem of the HJ equation with source -V.
  if (!(sigma >= 0.0)) throw std::invalid_argument("coupling sigma must be nonnegative");
  if (!(alpha > 0.0)) throw std::invalid_argument("coupling alpha must be positive");
  const CouplingSpec coupling{sigma, alpha, 0.0};
  require_valid_resolution(options.n);
  const Field2D grid(options.n, options.period);
  const Field2D vpot = potential ? *potential : grid;
  require_compatible(grid, vpot);
  const double vmax = linf_norm(vpot);

  auto normalized = [](Field2D v) {
    v *= 1.0 / std::sqrt(inner(v, v));
    return v;
  };

  Field2D v = normalized(Field2D::constant(options.n, 1.0, options.period));
  double tau_scale = 1.0;
  int restarts = 0;
  double lambda = 0.0;
  double hj_residual_value = 0.0;
  int it = 0;
  for (;; ++it) {
    const Field2D m = v * v * (1.0 / inner(v, v));
    const Field2D coupling_term = coupling.apply(m);
    const Field2D weight = coupling_term - vpot;
    lambda = rayleigh_quotient(v, weight);
    // HJ residual of u = -log v: (-Delta v + W v - lambda v) / v.
    Field2D eig = weight * v - laplacian(v) - lambda * v;
    for (std::size_t k = 0; k < eig.size(); ++k) eig.values()[k] /= v.values()[k];
    hj_residual_value = linf_norm(eig);
    if (hj_residual_value <= options.tol) break;
    if (it >= options.max_iters)
      throw SolverError(SolverFailure::kNonConvergence, "Hopf-Cole gradient flow did not converge",
                        hj_residual_value);

    // Explicit treatment of (W - lambda) v is stable for tau below the inverse
    // of its Lipschitz constant, (2 alpha + 1) sigma max m^alpha + max |V|.
    // The Rayleigh shift makes fixed points of the normalized step eigenpairs.
    const double tau =
        tau_scale / (1.0 + vmax + (2.0 * alpha + 1.0) * max_value(coupling_term));
    Field2D next = solve_helmholtz(v - tau * ((weight - lambda) * v), tau);
    if (min_value(next) <= 0.0 || !next.all_finite()) {
      if (++restarts > 3)
        throw SolverError(SolverFailure::kNegativeEigenvector, "Hopf-Cole flow left the positive cone",
                          hj_residual_value);
      tau_scale *= 0.25;
      v = normalized(Field2D::constant(options.n, 1.0, options.period));
      continue;
    }
    v = normalized(std::move(next));
  }

  MFGSolution sol;
  sol.u = v.map([](double x) { return -std::log(x); });
  sol.u -= mean(sol.u);
  sol.m = v * v * (1.0 / integral(v * v));
  sol.lambda = lambda;
  sol.outer_iters = it;

  MFGProblem check;
  check.hamiltonian.potential = potential;
  check.coupling = coupling;
  check.n = options.n;
  check.period = options.period;
  const MFGResiduals res = mfg_residuals(check, sol.u, sol.lambda, sol.m);
  sol.residual_hj = res.hj;
  sol.residual_fp = res.fp;
  sol.fixpoint_gap = 0.0;
  return sol;
}

std::vector<AlphaSweepRow> alpha_sweep(const MFGProblem& base, const std::vector<double>& alphas,
                                       const BootstrapOptions& holder) {
  if (!std::is_sorted(alphas.begin(), alphas.end()))
    throw std::invalid_argument("alpha sweep expects ascending alphas");
  std::vector<AlphaSweepRow> rows;
  MFGProblem problem = base;
  for (double a : alphas) {
    AlphaSweepRow row;
    row.alpha = a;
    problem.coupling.alpha = a;
    try {
      const MFGSolution sol = solve_mfg(problem);
      row.converged = true;
      row.lambda = sol.lambda;
      row.residual_hj = sol.residual_hj;
      row.residual_fp = sol.residual_fp;
      row.fixpoint_gap = sol.fixpoint_gap;
      row.outer_iters = sol.outer_iters;
      row.min_m = min_value(sol.m);
      row.max_m = max_value(sol.m);
      row.w22_u = hessian_l2(sol.u);
      for (double b : holder.betas)
        row.holder_m[b] = holder_quotient(sol.m, b, holder.holder_pairs, holder.holder_seed);
      problem.initial_m = sol.m;
      problem.initial_u = sol.u;
    } catch (const SolverError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hjlab
