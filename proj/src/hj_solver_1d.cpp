#include <cmath>
#include <sstream>

#include "hjlab/errors.hpp"
#include "hjlab/hj_solver.hpp"
#include "hjlab/krylov.hpp"

namespace hjlab {

ScalarConvexFunction ScalarConvexFunction::power(double gamma, double kappa) {
  if (!(gamma > 1.0)) throw std::invalid_argument("power Hamiltonian needs gamma > 1");
  constexpr double kDelta2 = 1e-20;
  std::ostringstream name;
  name << kappa << "|t|^" << gamma;
  return {[=](double t) { return kappa * std::pow(std::abs(t), gamma); },
          [=](double t) {
            const double t2 = t * t + (gamma < 2.0 ? kDelta2 : 0.0);
            return kappa * gamma * std::pow(t2, 0.5 * (gamma - 2.0)) * t;
          },
          name.str()};
}

ScalarConvexFunction ScalarConvexFunction::square() {
  return {[](double t) { return t * t; }, [](double t) { return 2.0 * t; }, "t^2"};
}

ScalarConvexFunction ScalarConvexFunction::smoothed_abs(double eps) {
  return {[eps](double t) { return std::sqrt(t * t + eps * eps); },
          [eps](double t) { return t / std::sqrt(t * t + eps * eps); }, "sqrt(t^2+eps^2)"};
}

Field1D hj_residual_1d(const ScalarConvexFunction& h, const Field1D& f, const Field1D& u, double lambda) {
  const Field1D du = periodic1d::derivative(u);
  const Field1D d2u = periodic1d::second_derivative(u);
  Field1D r{u.period, std::vector<double>(u.n())};
  for (int i = 0; i < u.n(); ++i) r.values[i] = -d2u.values[i] + h(du.values[i]) + lambda - f.values[i];
  return r;
}

namespace {

double l2(const Field1D& f) {
  double s = 0.0;
  for (double v : f.values) s += v * v;
  return std::sqrt(s * f.spacing());
}

}  // namespace

HJSolution1D solve_hj_1d(const ScalarConvexFunction& h, const Field1D& f, double tol, int max_iters) {
  periodic1d::require_valid(f);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int n = f.n();
  Field1D u{f.period, std::vector<double>(n, 0.0)};
  double lambda = periodic1d::mean(f) - h(0.0);
  Field1D r = hj_residual_1d(h, f, u, lambda);
  double best = periodic1d::linf_norm(r);

  for (int it = 0;; ++it) {
    const double r_inf = periodic1d::linf_norm(r);
    best = std::min(best, r_inf);
    if (r_inf <= tol) return {std::move(u), lambda, r_inf, it};
    if (it >= max_iters)
      throw SolverError(SolverFailure::kNonConvergence, "1D HJ Newton did not converge", best);

    const Field1D du = periodic1d::derivative(u);
    std::vector<double> drift(n);
    for (int i = 0; i < n; ++i) drift[i] = h.derivative(du.values[i]);

    const LinearOperator apply_jacobian = [&](std::span<const double> z) {
      Field1D w{f.period, {z.begin(), z.end()}};
      const double dl = periodic1d::mean(w);
      for (double& v : w.values) v -= dl;
      const Field1D dw = periodic1d::derivative(w);
      const Field1D d2w = periodic1d::second_derivative(w);
      std::vector<double> out(n);
      for (int i = 0; i < n; ++i) out[i] = -d2w.values[i] + drift[i] * dw.values[i] + dl;
      return out;
    };
    const LinearOperator precondition = [&](std::span<const double> y) {
      return periodic1d::solve_helmholtz(Field1D{f.period, {y.begin(), y.end()}}, 1.0).values;
    };
    std::vector<double> rhs(r.values);
    for (double& v : rhs) v = -v;
    GmresOptions gm;
    gm.relative_tolerance = 1e-10;
    const GmresResult lin = gmres(apply_jacobian, precondition, rhs, gm);

    Field1D w{f.period, lin.x};
    const double dl = periodic1d::mean(w);
    for (double& v : w.values) v -= dl;

    const double r_l2 = l2(r);
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k <= 30; ++k, step *= 0.5) {
      Field1D trial{f.period, u.values};
      for (int i = 0; i < n; ++i) trial.values[i] += step * w.values[i];
      Field1D trial_r = hj_residual_1d(h, f, trial, lambda + step * dl);
      if (l2(trial_r) < r_l2) {
        const double m = periodic1d::mean(trial);
        for (double& v : trial.values) v -= m;
        u = std::move(trial);
        lambda += step * dl;
        r = std::move(trial_r);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw SolverError(SolverFailure::kNonConvergence, "1D HJ line search stalled", best);
  }
}

std::vector<ConvexityCheck> convexity_audit_1d(const Field1D& u, double lambda, const Field1D& f,
                                               const ScalarConvexFunction& h,
                                               const std::vector<ScalarConvexFunction>& phis) {
  const Field1D du = periodic1d::derivative(u);
  const double dx = u.spacing();
  std::vector<ConvexityCheck> out;
  for (const auto& phi : phis) {
    ConvexityCheck c{phi.name};
    for (int i = 0; i < u.n(); ++i) {
      c.lhs += phi(h(du.values[i])) * dx;
      c.rhs += phi(f.values[i] - lambda) * dx;
    }
    c.pass = c.lhs <= c.rhs * (1.0 + 1e-8) + 1e-10;
    out.push_back(c);
  }
  return out;
}

}  // namespace hjlab
