#pragma once

#include <vector>

#include "euler_riesz.hpp"
#include "fpme.hpp"
#include "grid.hpp"
#include "params.hpp"

namespace relax {

enum class Geometry { line_segment, torus };

// Measure supported on grid nodes. masses are per-node integrated weights
// (nodal value times cell volume); signed masses are allowed for the
// bounded-Lipschitz distance only.
struct GridMeasure {
  PeriodicGrid grid{1, 16};
  std::vector<double> masses;
  Geometry geometry = Geometry::torus;

  static GridMeasure from_density(const Field& rho, Geometry geom);
  double total() const;
  // clips masses >= -1e-14 to zero and rescales to unit total; throws if the
  // input is further than 1e-10 from a probability measure
  GridMeasure as_probability() const;
};

// Exact quadratic-cost transport distance between 1-d probability measures on
// the segment, via the quantile (inverse-CDF) coupling.
double wasserstein2_1d(const GridMeasure& mu, const GridMeasure& nu);

// 1-d circular variant: quantile cost minimized over the mass offset of the
// cut point (convex in the offset; golden-section search).
double wasserstein2_torus_1d(const GridMeasure& mu, const GridMeasure& nu);

// Entropically regularized fallback for d = 2 (and available for d = 1), with
// self-transport debiasing. The certified interval [lower, upper] brackets the
// unregularized cost of the mu-nu problem.
struct EntropicResult {
  double value = 0.0;        // sqrt(max(0, debiased cost))
  double cost = 0.0;         // debiased squared cost
  double lower = 0.0;        // certified bounds for the raw mu-nu cost
  double upper = 0.0;
  double bias_bound = 0.0;   // rigorous bound on |cost - exact squared cost|
  double marginal_violation = 0.0;
  int iterations = 0;
  double reg = 0.0;
};
EntropicResult wasserstein2_entropic(const GridMeasure& mu, const GridMeasure& nu,
                                     double reg);

// convenience dispatch on densities sharing a grid
double wasserstein2(const Field& rho_a, const Field& rho_b, Geometry geom);

// Bounded-Lipschitz (flat) distance for signed measures: the discretized dual
// with |phi| <= 1 and |phi_i - phi_j| <= dist(i, j) on grid-adjacent pairs.
// d = 1 is solved exactly by a concave piecewise-linear chain sweep; d = 2 by
// a first-order primal-dual iteration with a duality-gap certificate.
struct BoundedLipschitzResult {
  double value = 0.0;
  std::vector<double> phi;  // feasible dual certificate
  double gap = 0.0;         // certified duality gap (0 for the exact path)
};
BoundedLipschitzResult bounded_lipschitz(const GridMeasure& mu, const GridMeasure& nu);
// first-order path exposed for cross-checking (any dimension)
BoundedLipschitzResult bounded_lipschitz_iterative(const GridMeasure& mu,
                                                   const GridMeasure& nu,
                                                   double gap_tol = 1e-6,
                                                   long max_iters = 400000);

// root-sum-square aggregate of per-component distances between momentum fields
double dbl_momentum_sq(const VectorField& ma, const VectorField& mb, Geometry geom);

// A-priori growth bound for the squared transport distance along a trajectory
// pair: d2(t)^2 against its explicit exponential majorant driven by the
// accumulated relative kinetic energy. ratio <= 1 is the expected outcome.
struct W2BoundReport {
  std::vector<double> times;
  std::vector<double> d2_sq;
  std::vector<double> majorant;
  double grad_u_max = 0.0;
  double worst_ratio = 0.0;  // max over positive-majorant times of lhs/rhs
};
W2BoundReport w2_growth_check(const ErTrajectory& er, const FpmeTrajectory& lim,
                              const Params& p);

}  // namespace relax
