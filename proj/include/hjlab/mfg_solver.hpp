#pragma once

// Stationary mean field game on the torus with defocusing coupling
//
//   -Delta u + H(x, grad u) + lambda = f(m)
//   -Delta m - div(D_pH(x, grad u) m) = 0,   m > 0,  int m = 1,
//
// f(m) = sigma m^alpha, optionally with the coupling evaluated on the twice
// mollified density.

#include <optional>
#include <string>
#include <vector>

#include "hjlab/bootstrap.hpp"
#include "hjlab/field.hpp"
#include "hjlab/hamiltonian.hpp"

namespace hjlab {

struct CouplingSpec {
  double sigma = 1.0;
  double alpha = 1.0;
  /// Width of the Gaussian mollifier; 0 disables mollification.
  double mollify_eps = 0.0;

  void validate() const;
  /// sigma ((m * chi) * chi)^alpha.
  Field2D apply(const Field2D& m) const;
};

struct MFGProblem {
  HamiltonianSpec hamiltonian;
  CouplingSpec coupling;
  int n = 64;
  double period = 1.0;
  /// Relaxation weight theta in m <- (1 - theta) m + theta m_hat.
  double damping = 1.0;
  double tol = 1e-9;
  int max_outer = 400;
  std::optional<Field2D> initial_m;
  std::optional<Field2D> initial_u;

  void validate() const;
};

struct OuterIterate {
  double fixpoint_gap = 0.0;
  double residual_hj = 0.0;
  double residual_fp = 0.0;
  double lambda = 0.0;
  double damping = 0.0;
};

struct MFGSolution {
  Field2D u;
  double lambda = 0.0;
  Field2D m;
  int outer_iters = 0;
  double residual_hj = 0.0;
  double residual_fp = 0.0;
  double fixpoint_gap = 0.0;
  std::vector<OuterIterate> history;
  std::optional<BootstrapReport> diagnostics;
};

/// Damped Picard iteration over the HJ and FP solvers. The damping is halved
/// (down to 1/64) after the gap ||m_hat - m|| grows three times in a row.
/// Throws SolverError(kNonConvergence) with the gap history, or propagates
/// SolverError(kPositivityLoss).
MFGSolution solve_mfg(const MFGProblem& problem);

/// Residuals of a candidate triple, recomputed from scratch:
/// ||-Delta u + H + lambda - f(m)||_inf and the FP weak residual.
struct MFGResiduals {
  double hj = 0.0;
  double fp = 0.0;
  double mass_error = 0.0;
  double min_m = 0.0;
};
MFGResiduals mfg_residuals(const MFGProblem& problem, const Field2D& u, double lambda, const Field2D& m);

struct HopfColeOptions {
  int n = 64;
  double period = 1.0;
  double tol = 1e-10;
  int max_iters = 200000;
};

/// Reference solver for H = |p|^2 + V: with v = e^{-u} the system becomes
/// -Delta v + (sigma m^alpha - V) v = lambda v, m = v^2 / int v^2, solved by
/// normalized gradient flow. `potential` may be omitted for V = 0; sigma = 0
/// switches the coupling off (plain HJ with source -V).
MFGSolution solve_mfg_hopf_cole(double alpha, double sigma, const std::optional<Field2D>& potential,
                                const HopfColeOptions& options = {});

struct AlphaSweepRow {
  double alpha = 0.0;
  bool converged = false;
  std::string error;
  double lambda = 0.0;
  double residual_hj = 0.0;
  double residual_fp = 0.0;
  double fixpoint_gap = 0.0;
  int outer_iters = 0;
  double min_m = 0.0;
  double max_m = 0.0;
  double w22_u = 0.0;
  std::map<double, double> holder_m;
};

/// Continuation in alpha, warm-starting each solve from the previous one.
/// Failures are recorded per row and the sweep continues.
std::vector<AlphaSweepRow> alpha_sweep(const MFGProblem& base, const std::vector<double>& alphas,
                                       const BootstrapOptions& holder = {});

}  // namespace hjlab
