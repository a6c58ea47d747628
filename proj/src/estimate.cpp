#include "hjlab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>

#include "hjlab/errors.hpp"

namespace hjlab {
namespace {

double normalized_gap(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

struct Derivatives {
  Gradient grad;
  Hessian hess;
};

Derivatives dealiased_derivatives(const Field2D& u) {
  const Field2D ut = truncate_two_thirds(u);
  return {gradient(ut), hessian(ut)};
}

}  // namespace

EstimateReport audit(const Field2D& u, const Field2D& f_eff) {
  require_compatible(u, f_eff);
  const auto [g, h] = dealiased_derivatives(u);
  EstimateReport r;
  r.lhs_hessian = inner(h.xx, h.xx) + 2.0 * inner(h.xy, h.xy) + inner(h.yy, h.yy);
  const Field2D grad2 = g.x * g.x + g.y * g.y;
  r.lhs_grad4 = inner(grad2, grad2);
  r.rhs_f2 = inner(f_eff, f_eff);
  r.identity_residuals = check_identities(u);
  r.degenerate = r.rhs_f2 < kDegenerateSourceThreshold;
  if (!r.degenerate) r.ratio = (r.lhs_hessian + r.lhs_grad4) / r.rhs_f2;
  return r;
}

EstimateReport audit_focusing(const Field2D& u, const Field2D& f_eff) { return audit(-u, -f_eff); }

std::map<std::string, double> check_identities(const Field2D& u) {
  const auto [g, h] = dealiased_derivatives(u);
  const Field2D ux2 = g.x * g.x;
  const Field2D uy2 = g.y * g.y;
  std::map<std::string, double> res;

  // Vanishing integrals are measured against their Cauchy-Schwarz scale.
  const auto vanishing = [](const Field2D& a, const Field2D& b) {
    return std::abs(inner(a, b)) / (1.0 + std::sqrt(inner(a, a) * inner(b, b)));
  };
  res["ixx_ux2"] = vanishing(h.xx, ux2);
  res["iyy_uy2"] = vanishing(h.yy, uy2);

  const double d2 = inner(h.xx, h.xx) + inner(h.yy, h.yy) + 2.0 * inner(h.xy, h.xy);
  const Field2D lap = h.xx + h.yy;
  res["hessian_laplacian"] = normalized_gap(d2, inner(lap, lap));

  const double cross_lhs = -2.0 * inner(h.xx, uy2) - 2.0 * inner(h.yy, ux2);
  const double cross_rhs = 8.0 * inner(g.x * g.y, h.xy);
  const double cross_scale = 2.0 * std::sqrt(inner(h.xx, h.xx) * inner(uy2, uy2)) +
                             2.0 * std::sqrt(inner(h.yy, h.yy) * inner(ux2, ux2));
  res["cross_term"] = std::abs(cross_lhs - cross_rhs) / (1.0 + cross_scale);

  double worst = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = ux2.values()[k], b = uy2.values()[k];
    worst = std::max(worst, normalized_gap((a + b) * (a + b), a * a + b * b + 2.0 * a * b));
  }
  res["grad4_algebra"] = worst;

  // Splitting of the coercive form at C = 3 into the square part and the
  // Young part: (1 - 1/C) Q_C = (1 - 1/C) S + (4/C) Y.
  constexpr double c = kEstimateConstant;
  const Field2D grad2 = ux2 + uy2;
  const double q = d2 + inner(grad2, grad2) -
                   2.0 * c / (c - 1.0) * (inner(h.xx, uy2) + inner(h.yy, ux2));
  const YoungDecomposition yd = young_decomposition(u, c);
  res["young_split"] = normalized_gap((1.0 - 1.0 / c) * q,
                                      (1.0 - 1.0 / c) * yd.nonneg_square_part + 4.0 / c * yd.young_part);
  return res;
}

YoungDecomposition young_decomposition(const Field2D& u, double c_f) {
  if (!(c_f > 1.0)) throw std::invalid_argument("Young decomposition needs C_f > 1");
  const auto [g, h] = dealiased_derivatives(u);
  const Field2D a = h.xx - g.y * g.y;
  const Field2D b = h.yy - g.x * g.x;
  const Field2D uxuy = g.x * g.y;
  YoungDecomposition yd;
  yd.nonneg_square_part = inner(a, a) + inner(b, b);
  yd.young_part = 2.0 * inner(uxuy, h.xy) +
                  0.5 * (c_f - 1.0) * (inner(h.xy, h.xy) + inner(uxuy, uxuy));
  return yd;
}

AuditedSolve solve_and_audit(const Field2D& f, const HJOptions& options) {
  HJProblem problem{HamiltonianSpec{}, f};
  HJSolution sol = solve_hj(problem, options);
  EstimateReport report = audit(sol.u, f - sol.lambda);
  return {std::move(sol), std::move(report)};
}

// ---------------------------------------------------------------------------
// Sharpness probe

namespace {

struct Mode {
  int kx, ky;
  bool sine;
};

std::vector<Mode> search_basis(double band) {
  std::vector<Mode> modes;
  const int kmax = static_cast<int>(std::floor(band));
  for (int ky = 0; ky <= kmax; ++ky)
    for (int kx = -kmax; kx <= kmax; ++kx) {
      if (ky == 0 && kx <= 0) continue;
      if (kx * kx + ky * ky > band * band) continue;
      modes.push_back({kx, ky, false});
      modes.push_back({kx, ky, true});
    }
  return modes;
}

class RatioProbe {
 public:
  RatioProbe(const SearchOptions& opt) : opt_(opt), modes_(search_basis(opt.band)) {
    require_valid_resolution(opt.n);
    for (const Mode& m : modes_) {
      basis_.push_back(Field2D::sample(opt.n, 1.0, [&](double x, double y) {
        const double phase = 2.0 * std::numbers::pi * (m.kx * x + m.ky * y);
        return m.sine ? std::sin(phase) : std::cos(phase);
      }));
    }
  }

  std::size_t dimension() const { return modes_.size(); }

  /// Every basis function has squared L^2 norm 1/2 on the unit torus.
  void project_to_sphere(std::vector<double>& c) const {
    double s = 0.0;
    for (double v : c) s += v * v;
    const double scale = opt_.source_norm / std::sqrt(0.5 * s);
    for (double& v : c) v *= scale;
  }

  std::vector<double> coefficients_of(const Field2D& f) const {
    std::vector<double> c;
    for (const Field2D& b : basis_) c.push_back(2.0 * inner(f, b));
    return c;
  }

  Field2D source(const std::vector<double>& c) const {
    Field2D f(opt_.n, 1.0);
    for (std::size_t j = 0; j < c.size(); ++j) f += c[j] * basis_[j];
    return f;
  }

  /// Ratio at c, warm-started from `warm`; nullopt when the solve fails.
  std::optional<AuditedSolve> evaluate(const std::vector<double>& c, const Field2D* warm) const {
    HJOptions o;
    o.tol = opt_.tol;
    if (warm) o.initial_u = *warm;
    try {
      return solve_and_audit(source(c), o);
    } catch (const SolverError&) {
      return std::nullopt;
    }
  }

 private:
  SearchOptions opt_;
  std::vector<Mode> modes_;
  std::vector<Field2D> basis_;
};

void ascend(const RatioProbe& probe, const SearchOptions& opt, int seed_index, std::vector<double> c,
            SearchResult& result) {
  probe.project_to_sphere(c);
  auto current = probe.evaluate(c, nullptr);
  if (!current) {
    ++result.skipped;
    return;
  }
  double ratio = current->report.ratio;
  result.trials.push_back({seed_index, 0, ratio, true});
  if (ratio > result.best_ratio) {
    result.best_ratio = ratio;
    result.best_f = probe.source(c);
  }

  double step = opt.initial_step;
  for (int it = 1; it <= opt.ascent_iters; ++it) {
    std::vector<double> grad(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      std::vector<double> plus = c, minus = c;
      plus[j] += opt.fd_step;
      minus[j] -= opt.fd_step;
      const auto rp = probe.evaluate(plus, &current->solution.u);
      const auto rm = probe.evaluate(minus, &current->solution.u);
      if (!rp || !rm) {
        ++result.skipped;
        continue;
      }
      grad[j] = (rp->report.ratio - rm->report.ratio) / (2.0 * opt.fd_step);
    }
    // Tangential component on the sphere.
    double gc = 0.0, cc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      gc += grad[j] * c[j];
      cc += c[j] * c[j];
    }
    double gnorm = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      grad[j] -= gc / cc * c[j];
      gnorm += grad[j] * grad[j];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm == 0.0) break;

    const double radius = std::sqrt(cc);
    bool accepted = false;
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt, step *= 0.5) {
      std::vector<double> trial = c;
      for (std::size_t j = 0; j < c.size(); ++j) trial[j] += step * radius * grad[j] / gnorm;
      probe.project_to_sphere(trial);
      auto next = probe.evaluate(trial, &current->solution.u);
      if (!next) {
        ++result.skipped;
        continue;
      }
      const bool up = next->report.ratio > ratio;
      result.trials.push_back({seed_index, it, next->report.ratio, up});
      if (up) {
        c = std::move(trial);
        ratio = next->report.ratio;
        current = std::move(next);
        accepted = true;
        if (ratio > result.best_ratio) {
          result.best_ratio = ratio;
          result.best_f = probe.source(c);
        }
      }
    }
    if (!accepted) break;
    step *= 2.0;
  }
}

}  // namespace

SearchResult adversarial_ratio_search(const SearchOptions& options) {
  if (options.seeds < 1) throw std::invalid_argument("search needs at least one seed");
  const RatioProbe probe(options);
  SearchResult result;
  result.best_f = Field2D(options.n, 1.0);
  for (int s = 0; s < options.seeds; ++s) {
    std::mt19937_64 rng(options.base_seed + static_cast<std::uint64_t>(s));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> c(probe.dimension());
    for (double& v : c) v = normal(rng);
    ascend(probe, options, s, std::move(c), result);
  }
  return result;
}

SearchResult ratio_ascent_from(const Field2D& initial_f, const SearchOptions& options) {
  const RatioProbe probe(options);
  SearchResult result;
  result.best_f = Field2D(options.n, 1.0);
  ascend(probe, options, 0, probe.coefficients_of(initial_f), result);
  return result;
}

}  // namespace hjlab
