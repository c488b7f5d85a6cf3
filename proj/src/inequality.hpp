#pragma once

#include <cstdint>
#include <vector>

#include "grid.hpp"
#include "params.hpp"

namespace relax {

// H = Lambda^{-b} div(u g) - (u . grad) Lambda^{-b} g for mean-zero u, g.
// All products are dealiased; b in (0, 1).
Field commutator_field(const VectorField& u, const Field& g, double b);

// At b = 0 the commutator collapses to g div u; exposed for the algebraic
// identity check.
Field commutator_b0(const VectorField& u, const Field& g);

struct CommutatorReport {
  double b = 0.0;
  double s = 0.0;          // Sobolev index of the velocity norm, > d/2 + 1
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;  // ||H|| / (||u||_{H^s} ||Lambda^{-b} g||)
  double max_zero_mode_const = 0.0;  // |mean H| vol / (||grad u|| ||Lambda^{-b} g||)
};

// Randomized boundedness study across grid sizes: band-limited mean-zero
// fields with band n/4, ratios collected per grid size.
std::vector<CommutatorReport> commutator_ratio_study(const std::vector<int>& grid_sizes,
                                                     int trials, double b, double s,
                                                     std::uint64_t seed);

struct HlsReport {
  double alpha = 0.0, p = 0.0, q = 0.0;
  int n = 0;
  double length = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;  // |int f Lambda^{alpha-d} g| / (||f||_p ||g||_q)
};

// Seeded random compactly supported bumps on a large torus; requires the
// exponent relation 1/p + 1/q + alpha/d = 2.
HlsReport hls_probe(double alpha, int d, double p, double q, int trials, int n,
                    double length, std::uint64_t seed);

// Degenerate-elliptic extension of a mean-zero line source g: solves
//   -div(|xi|^zeta grad V) = 0 on the half strip xi in (0, Xi],
//   -|xi|^zeta dV/dxi -> g/2 as xi -> 0+,  V(., Xi) = 0,
// with Fourier modes in x and conservative second-order differences on the
// graded mesh xi_j = Xi (j/J)^(2/(1-zeta)). Returns the weighted Dirichlet
// energy over the full strip scaled by the fractional-normalization constant
// 2 d_nu, nu = (d - alpha)/2, d_nu = 2^(1-2 nu) Gamma(1-nu)/Gamma(nu), which
// makes the result equal int g Lambda^{alpha-d} g for the exact solution.
struct ExtensionProblem {
  Field source;        // g, mean-zero
  double alpha = 0.5;  // zeta = alpha + 1 - d
  double height = 40.0;      // strip half-height Xi
  int levels = 160;          // graded-mesh nodes J
};
struct ExtensionResult {
  double energy = 0.0;            // normalized weighted Dirichlet energy
  double normalization = 0.0;     // the 2 d_nu factor applied
  double boundary_fraction = 0.0; // top-row energy density over peak
};
ExtensionResult extension_energy(const ExtensionProblem& prob);

// driver with built-in mesh refinement; throws numerical_error unless the
// energy converges monotonically under doubling of the xi-mesh
ExtensionResult extension_energy_converged(ExtensionProblem prob);

}  // namespace relax
