#pragma once

// Quantities measured along the regularity chain
//   m^a in L^2 => D^2 u, |grad u|^2 in L^2 => D_pH(x, grad u) in L^r, r > 2
//   => m in C^beta => u in C^{2,beta},
// plus the two integrals of the second-order energy estimate.

#include <map>
#include <vector>

#include "hjlab/field.hpp"
#include "hjlab/hamiltonian.hpp"

namespace hjlab {

struct BootstrapReport {
  std::map<double, double> lq_m_alpha;   // q -> ||m^alpha||_{L^q}, q in {2, 4, 8}
  double w22_u = 0.0;                    // ||D^2 u||_{L^2}
  double grad4_u = 0.0;                  // ||grad u||_{L^4}^4
  std::map<double, double> lr_drift;     // r -> ||D_pH(., grad u)||_{L^r}; r = inf keyed by +infinity
  std::map<double, double> holder_m;     // beta -> quotient of m
  std::map<double, double> holder_d2u;   // beta -> largest quotient over u_xx, u_xy, u_yy
  double energy_hessian_m = 0.0;         // int |D^2 u|^2 m
  double energy_grad_power = 0.0;        // int |grad m^{(alpha+1)/2}|^2
};

struct BootstrapOptions {
  std::vector<double> betas{0.25, 0.5, 0.75};
  std::size_t holder_pairs = 100000;
  std::uint64_t holder_seed = 0;
};

BootstrapReport compute_bootstrap(const Field2D& u, const Field2D& m, const HamiltonianSpec& spec,
                                  double alpha, const BootstrapOptions& options = {});

}  // namespace hjlab
