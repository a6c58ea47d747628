#pragma once

#include <optional>

#include "hjlab/field.hpp"

namespace hjlab {

/// H(x, p) = kappa |p|^gamma + b0(x) . p + V(x), convex in p.
struct HamiltonianSpec {
  double kappa = 1.0;
  double gamma = 2.0;
  std::optional<Gradient> b0;
  std::optional<Field2D> potential;
  /// Smoothing of |p| inside D_pH when gamma < 2.
  double kink_delta = 1e-10;

  void validate() const;
  bool is_pure_quadratic() const { return kappa == 1.0 && gamma == 2.0 && !b0; }
};

/// H(x, grad u) sampled on the grid, with the exact (unregularized) modulus.
Field2D evaluate_hamiltonian(const HamiltonianSpec& spec, const Gradient& grad_u);

/// D_pH(x, grad u) = kappa gamma |p|^{gamma-2} p + b0, with |p| replaced by
/// sqrt(|p|^2 + delta^2) when gamma < 2 so that D_pH(x, 0) = b0.
Gradient drift_from_hamiltonian(const HamiltonianSpec& spec, const Gradient& grad_u);

}  // namespace hjlab
