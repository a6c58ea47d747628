#include "hjlab/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace hjlab {
namespace {

double relative_change(double fine, double coarse) {
  const double diff = std::abs(fine - coarse);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(coarse), std::abs(fine));
}

}  // namespace

BootstrapReport bootstrap_report(const MFGSolution& sol, const HamiltonianSpec& spec, double alpha,
                                 const BootstrapOptions& options) {
  return compute_bootstrap(sol.u, sol.m, spec, alpha, options);
}

std::vector<RefinementRow> refinement_stability(const MFGProblem& problem, const std::vector<int>& resolutions,
                                                const std::function<HamiltonianSpec(int)>& resample,
                                                const BootstrapOptions& options) {
  if (resolutions.size() < 2) throw std::invalid_argument("refinement needs at least two resolutions");
  std::vector<RefinementRow> rows;
  for (int n : resolutions) {
    MFGProblem p = problem;
    p.n = n;
    p.hamiltonian = resample(n);
    p.initial_m.reset();
    p.initial_u.reset();
    const MFGSolution sol = solve_mfg(p);

    RefinementRow row;
    row.n = n;
    row.lambda = sol.lambda;
    row.max_m = max_value(sol.m);
    for (double b : options.betas)
      row.holder_m[b] = holder_quotient(sol.m, b, options.holder_pairs, options.holder_seed);
    if (!rows.empty()) {
      const RefinementRow& prev = rows.back();
      row.abs_change_lambda = std::abs(row.lambda - prev.lambda);
      row.rel_change_lambda = relative_change(row.lambda, prev.lambda);
      row.rel_change_max_m = relative_change(row.max_m, prev.max_m);
      for (double b : options.betas) row.rel_change_holder_m[b] = relative_change(row.holder_m[b], prev.holder_m.at(b));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hjlab
