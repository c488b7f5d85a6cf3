#pragma once

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "energetics.hpp"
#include "identities.hpp"
#include "metrics.hpp"

namespace relax {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log residuals
  bool ok = false;
  bool floored = false;   // a zero error value was replaced by the machine floor
  std::string note;
};

// ordinary least squares on (log eps, log error); needs >= 3 positive pairs
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

struct EpsilonResult {
  double epsilon = 0.0;
  std::vector<EnergyReport> series;   // one row per output time, metrics attached
  double sup_d2_sq = 0.0;
  double sup_negsob_sq = 0.0;
  double int_dbl_sq = 0.0;            // time integral of the momentum distance^2
  double sup_lgamma_sq = 0.0;
  double int_l1_sq = 0.0;
  bool coercivity_ok = true;          // modulated internal dominates |interaction|
  double min_coercivity_ratio = 0.0;
  double est_mod_constant = 0.0;
  double gronwall_ratio = 0.0;
};

struct SweepResult {
  std::vector<double> epsilons;
  std::vector<EpsilonResult> per_eps;
  // spatial truncation estimates from the n vs 2n limit runs
  double trunc_res2 = 0.0;    // sqrt(sup d2^2 + sup negsob^2) of the limit pair
  double trunc_dbl = 0.0;     // sqrt(int dbl^2) of the limit momentum pair
  double trunc_res3 = 0.0;    // sup lgamma error of the limit pair
  RateFit rate_res2;          // slope of sqrt(sup d2^2 + sup negsob^2) vs eps
  RateFit rate_dbl;           // slope of sqrt(int dbl^2) vs eps
  RateFit rate_res3;          // slope of sup lgamma error vs eps
  std::string theorem_part;   // "res2" or "res3" depending on the regime
  std::string config_hash;
  std::uint64_t seed = 0;
};

// Runs the limit equation once (plus once at 2n for the truncation gate) and
// the relaxation system per epsilon with well-prepared data, computes the
// per-time error metrics and aggregate rates.
SweepResult run_sweep(const Config& cfg, int threads);

}  // namespace relax
