#include "hjlab/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hjlab {

BootstrapReport compute_bootstrap(const Field2D& u, const Field2D& m, const HamiltonianSpec& spec,
                                  double alpha, const BootstrapOptions& options) {
  require_compatible(u, m);
  BootstrapReport r;
  const Field2D m_alpha = m.map([alpha](double v) { return std::pow(std::max(v, 0.0), alpha); });
  for (double q : {2.0, 4.0, 8.0}) r.lq_m_alpha[q] = lp_norm(m_alpha, q);

  const Gradient g = gradient(u);
  const Hessian h = hessian(u);
  r.w22_u = hessian_l2(u);
  const Field2D grad2 = g.x * g.x + g.y * g.y;
  r.grad4_u = inner(grad2, grad2);

  const Gradient drift = drift_from_hamiltonian(spec, g);
  const Field2D drift_mod = (drift.x * drift.x + drift.y * drift.y).map([](double v) { return std::sqrt(v); });
  for (double q : {2.0, 3.0, 4.0}) r.lr_drift[q] = lp_norm(drift_mod, q);
  r.lr_drift[std::numeric_limits<double>::infinity()] = linf_norm(drift_mod);

  for (double b : options.betas) {
    r.holder_m[b] = holder_quotient(m, b, options.holder_pairs, options.holder_seed);
    double worst = 0.0;
    for (const Field2D* entry : {&h.xx, &h.xy, &h.yy})
      worst = std::max(worst, holder_quotient(*entry, b, options.holder_pairs, options.holder_seed));
    r.holder_d2u[b] = worst;
  }

  const Field2D hess2 = h.xx * h.xx + 2.0 * (h.xy * h.xy) + h.yy * h.yy;
  r.energy_hessian_m = inner(hess2, m);
  const Field2D power = m.map([alpha](double v) { return std::pow(std::max(v, 0.0), 0.5 * (alpha + 1.0)); });
  const Gradient gp = gradient(power);
  r.energy_grad_power = inner(gp.x, gp.x) + inner(gp.y, gp.y);
  return r;
}

}  // namespace hjlab
