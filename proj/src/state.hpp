#pragma once

#include <string>

#include "grid.hpp"
#include "params.hpp"

namespace relax {

// Division floor relative to the uniform density; rho itself is never
// modified, the floor only guards divisions.
inline double density_floor(const PeriodicGrid& g) { return 1e-10 / g.volume(); }

struct FluidState {
  Field rho;
  VectorField m;
  double time = 0.0;

  const PeriodicGrid& grid() const { return rho.grid(); }
  // mass and positivity checks; throws validation_error on violation
  void validate() const;
};

struct LimitState {
  Field rho;
  double time = 0.0;

  const PeriodicGrid& grid() const { return rho.grid(); }
  void validate() const;
};

// u = m / max(rho, floor), pointwise
VectorField velocity(const FluidState& s);
VectorField velocity_of(const Field& rho, const VectorField& m);

// gradient of U'(rho): grad(ln rho) for gamma = 1, gamma rho^(gamma-2) grad(rho)
// for gamma > 1. Throws a vacuum error for gamma = 1 near the floor.
VectorField internal_energy_gradient(const Field& rho, double gamma);

// Velocity of the limit constitutive law,
//   u0 = -c_p grad U'(rho0) + c_k grad Lambda^(alpha-d) rho0,
// which together with rho0 makes the initial layer vanish.
VectorField well_prepared_velocity(const Field& rho0, const Params& p);

// ---- initial-data library ----

struct InitialSpec {
  std::string profile = "bump";  // bump | gaussian | uniform | file:<path>
  double amplitude = 0.5;        // in [0, 0.9]
  int mode = 1;                  // bump wavenumber
};

// Normalized probability density for the named profile.
//   bump:     (1 + a cos(mode x)) / Z     (product over axes in 2-d)
//   gaussian: (1-a)/L^d + a * periodized gaussian (sigma = L/12)
//   uniform:  1/L^d
//   file:     nodal array loaded from a stored field file
Field initial_density(const PeriodicGrid& g, const InitialSpec& spec);

}  // namespace relax
