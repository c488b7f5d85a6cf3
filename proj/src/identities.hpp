#pragma once

#include <vector>

#include "energetics.hpp"
#include "euler_riesz.hpp"
#include "fpme.hpp"
#include "params.hpp"

namespace relax {

// Residual of the discrete energy balance over consecutive snapshots:
//   r_k = [E(t_{k+1}) - E(t_k)] / dt + (1/eps) int rho |u|^2 (midpoint),
// where E = kinetic + free/eps. Zero for the exact flow.
std::vector<double> energy_identity_residual(const ErTrajectory& traj, const Params& p);

// Residual of the modulated internal-energy balance along a trajectory pair:
// centered time difference of int U(rho_er | rho_lim) against
//   int rho_er (u_er - u) . grad(U'(rho_er) - U'(rho))
//     - (gamma - 1) int U(rho_er | rho) div u,
// evaluated spectrally at the stored snapshots. One value per interior time.
struct IdentitySeries {
  std::vector<double> times;      // interior snapshot times
  std::vector<double> residual;   // |lhs - rhs|
  std::vector<double> lhs, rhs;
  double max_residual = 0.0;
};
IdentitySeries modulated_internal_identity(const ErTrajectory& er,
                                           const FpmeTrajectory& lim, const Params& p);

// One-sided bound check for the interaction-energy balance: the centered
// derivative of (c_k/2) int diff Lambda diff minus the transport coupling term
// should be controlled by C * int diff Lambda diff. Reports the smallest
// admissible empirical constant.
struct InteractionBoundReport {
  std::vector<double> times;
  std::vector<double> lhs;        // derivative minus coupling term
  std::vector<double> quad_form;  // int diff Lambda diff
  double empirical_constant = 0.0;
};
InteractionBoundReport modulated_interaction_bound(const ErTrajectory& er,
                                                   const FpmeTrajectory& lim,
                                                   const Params& p);

// Differential inequality for the full modulated energy: at each interior
// stored time,
//   d/dt[ modkin + F(rho|rho_lim)/eps ] + (1/2 eps) int rho |u_er - u|^2
//     <= C ( (c_p (gamma-1)/eps) modint + (|c_k|/eps) |quad| + eps ).
// Reports the smallest C that makes every stored time pass.
struct ModulatedEnergyReport {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs_basis;
  double empirical_constant = 0.0;  // max over times of lhs+ / basis
};
ModulatedEnergyReport modulated_energy_inequality(const ErTrajectory& er,
                                                  const FpmeTrajectory& lim,
                                                  const Params& p);

}  // namespace relax
