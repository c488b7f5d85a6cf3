#pragma once

#include <optional>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace relax {

// All scalar functionals of one state (and optionally of a state pair) at one
// instant. Pair quantities stay unset when no reference solution is attached.
struct EnergyReport {
  double time = 0.0;
  double mass = 0.0;
  std::vector<double> total_momentum;  // per axis
  double kinetic = 0.0;
  double internal = 0.0;
  double interaction = 0.0;      // raw bilinear form int rho Lambda^(alpha-d) rho
  double free = 0.0;             // c_p internal - (c_k/2) interaction
  double total = 0.0;            // kinetic + free / epsilon
  double dissipation_rate = 0.0; // (1/eps) int rho |u|^2
  double theta_norm = 0.0;       // ||rho||_{L^theta}, theta = 2d/(2d - alpha)
  double second_moment = 0.0;

  std::optional<double> mod_kinetic;
  std::optional<double> mod_internal;
  std::optional<double> mod_interaction;
  std::optional<double> neg_sobolev_sq;
  std::optional<double> lgamma_err_sq;
  std::optional<double> l1_momentum_err_sq;
  std::optional<double> d2_sq;
  std::optional<double> dbl_momentum_sq;
};

// int U(rho), with U(r) = r ln r (gamma = 1, 0 ln 0 := 0) or r^gamma/(gamma-1)
double internal_energy(const Field& rho, double gamma);

// int f Lambda^(alpha-d) g, evaluated as the spectral sum over nonzero modes.
// Symmetric in (f, g); zero modes are ignored by convention.
double interaction_energy(const Field& f, const Field& g, double alpha, int d);

double free_energy(const Field& rho, const Params& p);

double kinetic_energy(const FluidState& s);
// (1/2) int rho |u - u_bar|^2
double modulated_kinetic(const FluidState& s, const VectorField& u_bar);

// c_p int [U(rho) - U(rho_bar) - U'(rho_bar)(rho - rho_bar)]; nonnegative.
double modulated_internal(const Field& rho, const Field& rho_bar, double gamma,
                          double c_p);

// -(c_k/2) int (rho - rho_bar) Lambda^(alpha-d) (rho - rho_bar); requires the
// densities to carry equal mass.
double modulated_interaction(const Field& rho, const Field& rho_bar, const Params& p);

// ---- norms ----
double norm_l1(const Field& f);
double norm_lp(const Field& f, double p);
// homogeneous Sobolev norm ||Lambda^s f||_L2; the negative-order variant
// demands a mean-zero argument.
double norm_hs_homogeneous(const Field& f, double s);
double norm_neg_sobolev(const Field& f, double alpha, int d);  // s = -(d-alpha)/2
// ||f||_{H^s} = ||f||_{Hdot^s} + ||f||_{L2}
double norm_hs(const Field& f, double s);
double second_moment(const Field& f);

// pointwise pieces of the modulated internal energy and its convexity bound
double modulated_internal_pointwise(double r, double b, double gamma);
// (gamma/2) min(r,b)^(gamma-2) (r-b)^2
double modulated_internal_lower_pointwise(double r, double b, double gamma);

// Step-by-step verification of the interpolation chain bounding
// ||rho - rho_bar||_Lgamma^2 by an explicit multiple of the modulated
// internal energy (unit pressure coefficient). Valid for gamma in [1, 2].
struct LgammaChainReport {
  double gamma = 0.0;
  double lhs_sq = 0.0;         // ||rho - rho_bar||_Lgamma^2
  double weighted_core = 0.0;  // int (gamma/2) min^(gamma-2) diff^2
  double mod_internal = 0.0;   // int U(rho | rho_bar)
  double mass_factor = 0.0;
  double constant = 0.0;       // explicit C with the mass factor inserted
  bool holder_ok = false;
  bool core_ok = false;
  bool mass_ok = false;
  bool final_ok = false;
  bool ok() const { return holder_ok && core_ok && mass_ok && final_ok; }
};
LgammaChainReport lgamma_chain_check(const Field& rho, const Field& rho_bar, double gamma);

// report for a single fluid state
EnergyReport energy_report(const FluidState& s, const Params& p);
EnergyReport energy_report(const LimitState& s, const Params& p);
// report extended by modulated quantities against a reference limit state
EnergyReport energy_report_pair(const FluidState& s, const LimitState& ref,
                                const VectorField& u_ref, const Params& p);

}  // namespace relax
