#pragma once

// Ergodic viscous Hamilton-Jacobi equation on the torus:
//
//   -Delta u + H(x, grad u) + lambda = f,   int u = 0,
//
// solved by damped Newton on the pair (u, lambda). Each Newton step solves
// the linearization with GMRES preconditioned by (I - Delta)^{-1}.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hjlab/field.hpp"
#include "hjlab/hamiltonian.hpp"
#include "hjlab/periodic1d.hpp"

namespace hjlab {

struct HJProblem {
  HamiltonianSpec hamiltonian;
  Field2D source;
};

struct NewtonStep {
  double residual_linf = 0.0;
  double residual_l2 = 0.0;
  double step_length = 0.0;
  int krylov_iterations = 0;
};

struct HJSolution {
  Field2D u;
  double lambda = 0.0;
  double residual_linf = 0.0;
  double residual_l2 = 0.0;
  int newton_iters = 0;
  std::vector<NewtonStep> log;
};

struct HJOptions {
  double tol = 1e-10;
  int max_iters = 60;
  /// Iterates with ||u||_inf above this cap abort with BlowUp.
  double blowup_cap = 1e6;
  int max_halvings = 30;
  double krylov_tolerance = 1e-9;
  /// Optional warm start; its mean is removed.
  std::optional<Field2D> initial_u;
};

/// r = -Delta u + H(x, grad u) + lambda - f.
Field2D hj_residual(const HJProblem& problem, const Field2D& u, double lambda);

/// Action of the Newton Jacobian at u on (w, dlambda):
/// -Delta w + D_pH(x, grad u) . grad w + dlambda.
Field2D hj_jacobian_action(const HJProblem& problem, const Field2D& u, const Field2D& w,
                           double dlambda);

/// Throws SolverError(kNonConvergence) after max_iters, SolverError(kBlowUp)
/// when an iterate exceeds the cap.
HJSolution solve_hj(const HJProblem& problem, const HJOptions& options = {});

/// Solves with sources s f for s = 1/steps, ..., 1, warm-starting each stage
/// from the previous one.
HJSolution continuation_solve(const HJProblem& problem, int steps, const HJOptions& options = {});

// ---------------------------------------------------------------------------
// 1D periodic variant: -u'' + h(u') + lambda = f on [0, L).

struct ScalarConvexFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  std::string name;

  double operator()(double t) const { return value(t); }

  /// kappa |t|^gamma with the derivative smoothed at 0 for gamma < 2.
  static ScalarConvexFunction power(double gamma, double kappa = 1.0);
  static ScalarConvexFunction square();
  /// sqrt(t^2 + eps^2), a C^1 stand-in for |t|.
  static ScalarConvexFunction smoothed_abs(double eps = 1e-8);
};

struct HJSolution1D {
  Field1D u;
  double lambda = 0.0;
  double residual_linf = 0.0;
  int newton_iters = 0;
};

Field1D hj_residual_1d(const ScalarConvexFunction& h, const Field1D& f, const Field1D& u, double lambda);

HJSolution1D solve_hj_1d(const ScalarConvexFunction& h, const Field1D& f, double tol = 1e-10,
                         int max_iters = 60);

struct ConvexityCheck {
  std::string phi;
  double lhs = 0.0;  // int Phi(h(u'))
  double rhs = 0.0;  // int Phi(f - lambda)
  bool pass = false;
};

/// Compares int Phi(h(u')) with int Phi(f - lambda) for each Phi; pass iff
/// lhs <= rhs (1 + 1e-8) + 1e-10. Failures are reported, not thrown.
std::vector<ConvexityCheck> convexity_audit_1d(const Field1D& u, double lambda, const Field1D& f,
                                               const ScalarConvexFunction& h,
                                               const std::vector<ScalarConvexFunction>& phis);

}  // namespace hjlab
