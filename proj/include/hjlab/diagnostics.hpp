#pragma once

#include <functional>
#include <vector>

#include "hjlab/bootstrap.hpp"
#include "hjlab/mfg_solver.hpp"

namespace hjlab {

/// Regularity-chain quantities of a converged solution. The constants of the
/// second-order estimate are not evaluated; both integrals are reported raw.
BootstrapReport bootstrap_report(const MFGSolution& sol, const HamiltonianSpec& spec, double alpha,
                                 const BootstrapOptions& options = {});

struct RefinementRow {
  int n = 0;
  double lambda = 0.0;
  double max_m = 0.0;
  std::map<double, double> holder_m;
  /// Relative changes against the previous (coarser) row; empty for the first.
  double rel_change_lambda = 0.0;
  double abs_change_lambda = 0.0;
  double rel_change_max_m = 0.0;
  std::map<double, double> rel_change_holder_m;
};

/// Re-solves `problem` at each resolution (ascending). The potential and b0
/// of `problem` are resampled by the caller through `resample`, which maps a
/// resolution to the Hamiltonian for that grid.
std::vector<RefinementRow> refinement_stability(
    const MFGProblem& problem, const std::vector<int>& resolutions,
    const std::function<HamiltonianSpec(int)>& resample, const BootstrapOptions& options = {});

}  // namespace hjlab
