#include "hjlab/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "hjlab/errors.hpp"

namespace hjlab {

const char* to_string(SolverFailure kind) {
  switch (kind) {
    case SolverFailure::kNonConvergence: return "NonConvergence";
    case SolverFailure::kBlowUp: return "BlowUp";
    case SolverFailure::kPositivityLoss: return "PositivityLoss";
    case SolverFailure::kNegativeEigenvector: return "NegativeV";
    case SolverFailure::kDegenerateSource: return "DegenerateSource";
  }
  return "Unknown";
}

void HamiltonianSpec::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be positive");
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must exceed 1");
  if (b0 && (!b0->x.all_finite() || !b0->y.all_finite()))
    throw std::invalid_argument("drift b0 must be finite");
  if (potential && !potential->all_finite()) throw std::invalid_argument("potential must be finite");
}

Field2D evaluate_hamiltonian(const HamiltonianSpec& spec, const Gradient& grad_u) {
  const auto px = grad_u.x.values();
  const auto py = grad_u.y.values();
  Field2D h(grad_u.x.n(), grad_u.x.period());
  auto out = h.values();
  const bool quadratic = spec.gamma == 2.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double p2 = px[k] * px[k] + py[k] * py[k];
    out[k] = spec.kappa * (quadratic ? p2 : std::pow(p2, 0.5 * spec.gamma));
  }
  if (spec.b0) {
    const auto bx = spec.b0->x.values();
    const auto by = spec.b0->y.values();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += bx[k] * px[k] + by[k] * py[k];
  }
  if (spec.potential) h += *spec.potential;
  return h;
}

Gradient drift_from_hamiltonian(const HamiltonianSpec& spec, const Gradient& grad_u) {
  Gradient d{grad_u.x, grad_u.y};
  auto dx = d.x.values();
  auto dy = d.y.values();
  const double delta2 = spec.kink_delta * spec.kink_delta;
  for (std::size_t k = 0; k < dx.size(); ++k) {
    double factor = spec.kappa * spec.gamma;
    if (spec.gamma != 2.0) {
      double p2 = dx[k] * dx[k] + dy[k] * dy[k];
      if (spec.gamma < 2.0) p2 += delta2;
      factor *= std::pow(p2, 0.5 * (spec.gamma - 2.0));
    }
    dx[k] *= factor;
    dy[k] *= factor;
  }
  if (spec.b0) {
    d.x += spec.b0->x;
    d.y += spec.b0->y;
  }
  return d;
}

}  // namespace hjlab
