#pragma once

#include <string>

#include "errors.hpp"

namespace relax {

enum class Regime {
  pressureless_repulsive,  // c_p = 0, c_k < 0
  pressure_attractive,     // c_p > 0, c_k > 0
  pressure_repulsive,      // c_p > 0, c_k <= 0
};

const char* regime_name(Regime r);

// Physical/regime constants. Constructed through validated(), which enforces
// every admissibility constraint (in particular the ill-posed pressureless
// attractive combination is rejected).
struct Params {
  double epsilon = 0.1;  // relaxation parameter, > 0
  double c_p = 0.0;      // pressure coefficient, >= 0
  double c_k = -1.0;     // interaction coefficient
  double gamma = 1.0;    // adiabatic exponent, >= 1
  double alpha = 0.5;    // interaction exponent, in (max(0, d-2), d)
  int d = 1;             // dimension, 1 or 2
  Regime regime = Regime::pressureless_repulsive;

  static Params validated(double epsilon, double c_p, double c_k, double gamma,
                          double alpha, int d);

  // true iff the tuple would pass validation
  static bool admissible(double epsilon, double c_p, double c_k, double gamma,
                         double alpha, int d);

  double interaction_order() const { return alpha - d; }  // in (-2, 0)
  // exponent of the interpolation norm reported in pressure runs
  double theta() const { return 2.0 * d / (2.0 * d - alpha); }

  Params with_epsilon(double eps) const;
};

}  // namespace relax
