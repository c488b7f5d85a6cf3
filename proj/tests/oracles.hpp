#pragma once

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the library's spectral path: direct summation, finite
// differences, quadrature, and small exact LP solvers.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "grid.hpp"
#include "rng.hpp"

namespace oracle {

// O(n^2) direct DFT matching the library coefficient convention
// coeff(k) = (1/n^d) sum_x f(x) exp(-i k.x) on a 1-d grid.
std::vector<std::complex<double>> slow_dft_1d(const relax::PeriodicGrid& g,
                                              const std::vector<double>& nodal);

// 4th-order centered finite-difference d/dx_axis with periodic wrap.
std::vector<double> fd4_derivative(const relax::PeriodicGrid& g,
                                   const std::vector<double>& nodal, int axis);

// Fourier transform of the Riesz kernel c_{alpha,d}/|x|^alpha on the line,
// evaluated at wavenumber k by numeric integration (Fresnel-type oscillatory
// integral, alternating half-period sums with averaging acceleration).
// By Poisson summation this equals the multiplier of the mean-zero periodized
// kernel at lattice frequency k. d = 1 only.
double riesz_multiplier_integral_1d(double alpha, double k);

// standard Riesz normalization constant for Lambda^{alpha-d} = K * (.)
double riesz_constant(double alpha, int d);

// adaptive composite Gauss-Legendre quadrature of f over [a,b]
double quad_gl(const std::function<double(double)>& f, double a, double b,
               int panels = 512);

// exact optimal transport cost (squared Euclidean, line geometry) between two
// weighted point sets, via successive-shortest-path min-cost flow.
double transport_cost_lp(const std::vector<double>& x_mu, const std::vector<double>& w_mu,
                         const std::vector<double>& x_nu, const std::vector<double>& w_nu);

// random band-limited mean-zero 1-d field: modes 1..band with decaying
// gaussian amplitudes and random phases
relax::Field random_band_field(const relax::PeriodicGrid& g, int band, relax::Rng& rng,
                               double amplitude = 1.0, double decay = 0.5);

// positive probability-density bump: (1 + sum a_k cos(k x + phi_k))/L, |a| <= amp
relax::Field random_density(const relax::PeriodicGrid& g, int band, double amp,
                            relax::Rng& rng);

// observed convergence order from three errors at h, h/2, h/4
double observed_order(double e1, double e2);

}  // namespace oracle
