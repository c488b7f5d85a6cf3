#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace relax {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::pressureless_repulsive:
      return "pressureless_repulsive";
    case Regime::pressure_attractive:
      return "pressure_attractive";
    case Regime::pressure_repulsive:
      return "pressure_repulsive";
  }
  return "?";
}

namespace {

std::string check(double epsilon, double c_p, double c_k, double gamma, double alpha,
                  int d) {
  if (d != 1 && d != 2) return "params.d: dimension must be 1 or 2";
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    return "params.epsilon: must be a positive finite number";
  if (!(c_p >= 0.0) || !std::isfinite(c_p)) return "params.c_p: must be >= 0";
  if (!std::isfinite(c_k)) return "params.c_k: must be finite";
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) return "params.gamma: must be >= 1";
  if (!std::isfinite(alpha) || !(alpha > std::max(0.0, d - 2.0)) || !(alpha < d))
    return "params.alpha: must lie in (max(0, d-2), d)";
  if (c_p == 0.0 && c_k > 0.0)
    return "params.c_k: ill-posed regime (pressureless attractive: c_p = 0 with c_k > 0)";
  if (c_p == 0.0 && c_k == 0.0)
    return "params.c_k: degenerate regime (c_p = 0 requires c_k < 0)";
  return {};
}

}  // namespace

bool Params::admissible(double epsilon, double c_p, double c_k, double gamma,
                        double alpha, int d) {
  return check(epsilon, c_p, c_k, gamma, alpha, d).empty();
}

Params Params::validated(double epsilon, double c_p, double c_k, double gamma,
                         double alpha, int d) {
  std::string err = check(epsilon, c_p, c_k, gamma, alpha, d);
  if (!err.empty()) throw validation_error(err);
  Params p;
  p.epsilon = epsilon;
  p.c_p = c_p;
  p.c_k = c_k;
  p.gamma = gamma;
  p.alpha = alpha;
  p.d = d;
  if (c_p == 0.0)
    p.regime = Regime::pressureless_repulsive;
  else if (c_k > 0.0)
    p.regime = Regime::pressure_attractive;
  else
    p.regime = Regime::pressure_repulsive;
  return p;
}

Params Params::with_epsilon(double eps) const {
  return validated(eps, c_p, c_k, gamma, alpha, d);
}

}  // namespace relax
