#pragma once

// Audit of the quantitative W^{2,2} estimate for -Delta u + |grad u|^2 = f:
//
//   ||D^2 u||^2 + || |grad u|^2 ||^2 <= 3 ||f||^2   (all norms L^2 on the torus)
//
// together with the integration-by-parts identities its proof rests on.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hjlab/field.hpp"
#include "hjlab/hj_solver.hpp"

namespace hjlab {

struct EstimateReport {
  double lhs_hessian = 0.0;  // ||D^2 u||^2
  double lhs_grad4 = 0.0;    // ||grad u||_{L^4}^4
  double rhs_f2 = 0.0;       // ||f_eff||^2
  double ratio = 0.0;        // (lhs_hessian + lhs_grad4) / rhs_f2, 0 when degenerate
  std::map<std::string, double> identity_residuals;
  bool degenerate = false;
};

inline constexpr double kEstimateConstant = 3.0;
inline constexpr double kDegenerateSourceThreshold = 1e-14;

/// Energies of u against the effective source f_eff = f - lambda. Sets the
/// degenerate flag (ratio left at 0) when ||f_eff||^2 < 1e-14.
EstimateReport audit(const Field2D& u, const Field2D& f_eff);

/// Normalized residuals |lhs - rhs| / (1 + |lhs| + |rhs|) of:
///   ixx_ux2 / iyy_uy2 : int u_xx u_x^2 = 0, int u_yy u_y^2 = 0
///   hessian_laplacian : int |D^2 u|^2 = int (Delta u)^2
///   cross_term        : -2 int u_xx u_y^2 - 2 int u_yy u_x^2 = 8 int u_x u_y u_xy
///   grad4_algebra     : |grad u|^4 = u_x^4 + u_y^4 + 2 u_x^2 u_y^2 (max over nodes)
std::map<std::string, double> check_identities(const Field2D& u);

struct YoungDecomposition {
  /// int (u_xx - u_y^2)^2 + (u_yy - u_x^2)^2
  double nonneg_square_part = 0.0;
  /// int 2 u_x u_y u_xy + (C-1)/2 (u_xy^2 + u_x^2 u_y^2)
  double young_part = 0.0;
};

/// Throws std::invalid_argument for c_f <= 1.
YoungDecomposition young_decomposition(const Field2D& u, double c_f);

/// Solves the quadratic problem (kappa = 1, gamma = 2) for f and audits it
/// with f_eff = f - lambda.
struct AuditedSolve {
  HJSolution solution;
  EstimateReport report;
};
AuditedSolve solve_and_audit(const Field2D& f, const HJOptions& options = {});

/// Audits the focusing equation -Delta u - |grad u|^2 = f by mapping it to
/// the defocusing one through (u, f) -> (-u, -f).
EstimateReport audit_focusing(const Field2D& u, const Field2D& f_eff);

struct SearchTrial {
  int seed = 0;
  int iteration = 0;
  double ratio = 0.0;
  bool accepted = false;
};

struct SearchOptions {
  int n = 64;
  int seeds = 8;
  int ascent_iters = 6;
  /// Modes with 0 < |k| <= band.
  double band = 4.0;
  double fd_step = 1e-4;
  double initial_step = 0.5;
  double source_norm = 1.0;
  std::uint64_t base_seed = 0;
  double tol = 1e-10;
};

struct SearchResult {
  double best_ratio = 0.0;
  Field2D best_f;
  std::vector<SearchTrial> trials;
  int skipped = 0;
};

/// Projected gradient ascent of the audited ratio over band-limited sources
/// of fixed L^2 norm. Steps are accepted only if the ratio increases.
SearchResult adversarial_ratio_search(const SearchOptions& options);

/// Single ascent path started from the projection of initial_f onto the
/// search subspace (unit torus, options.n grid).
SearchResult ratio_ascent_from(const Field2D& initial_f, const SearchOptions& options);

}  // namespace hjlab
