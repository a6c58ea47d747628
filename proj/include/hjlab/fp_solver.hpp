#pragma once

// Stationary Fokker-Planck equation -Delta m - div(b m) = 0 with int m = 1,
// m > 0, solved as the fixed point of the mass-preserving semi-implicit
// pseudo-time iteration m <- (I - tau Delta)^{-1} (m + tau div(b m)).

#include <optional>

#include "hjlab/field.hpp"

namespace hjlab {

struct FPSolution {
  Field2D m;
  double residual_l2 = 0.0;
  double min_m = 0.0;
  double mass_error = 0.0;
  int iterations = 0;
};

struct FPOptions {
  double tol = 1e-10;
  int max_iters = 200000;
  /// Pseudo-time step; defaults to 1 / (2 ||b||_inf^2 + 1).
  std::optional<double> tau;
  std::optional<Field2D> initial_m;
};

/// -Delta m - div(b m).
Field2D fp_residual(const Field2D& m, const Gradient& drift);

/// sup over test fields phi of |int grad m . grad phi + m b . grad phi| /
/// ||phi||_{W^{1,2}}, i.e. the H^{-1} norm of the strong residual.
double fp_weak_residual(const Field2D& m, const Gradient& drift);

/// One pseudo-time step. The update leaves the k = 0 mode untouched; with
/// `renormalize` the mean is additionally reset to 1 / L^2.
Field2D fp_step(const Field2D& m, const Gradient& drift, double tau, bool renormalize = true);

double fp_stable_step(const Gradient& drift);

/// Throws SolverError(kNonConvergence) or SolverError(kPositivityLoss).
FPSolution solve_fp(const Gradient& drift, const FPOptions& options = {});

}  // namespace hjlab
