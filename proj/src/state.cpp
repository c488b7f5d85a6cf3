#include "state.hpp"

#include <cmath>
#include <sstream>

namespace relax {

namespace {

void check_density(const Field& rho, double time) {
  if (std::fabs(rho.integral() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "state: density mass " << rho.integral() << " != 1 at t = " << time;
    throw validation_error(os.str());
  }
  if (rho.min() < density_floor(rho.grid())) {
    std::ostringstream os;
    os << "state: density below positivity floor at t = " << time;
    throw validation_error(os.str());
  }
}

}  // namespace

void FluidState::validate() const {
  check_density(rho, time);
  if (m.dim() != grid().dim()) throw validation_error("state: momentum dimension mismatch");
}

void LimitState::validate() const { check_density(rho, time); }

VectorField velocity_of(const Field& rho, const VectorField& m) {
  const double floor = density_floor(rho.grid());
  VectorField u;
  for (const auto& mc : m.comp) {
    std::vector<double> v(rho.grid().size());
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = mc.nodal()[j] / std::max(rho.nodal()[j], floor);
    u.comp.push_back(Field::from_nodal(rho.grid(), std::move(v)));
  }
  return u;
}

VectorField velocity(const FluidState& s) { return velocity_of(s.rho, s.m); }

VectorField internal_energy_gradient(const Field& rho, double gamma) {
  if (gamma == 1.0) {
    if (rho.min() < 10.0 * density_floor(rho.grid()))
      throw validation_error(
          "internal_energy_gradient: density too close to vacuum for gamma = 1");
    VectorField grad_rho = gradient(rho);
    VectorField out;
    for (const auto& gc : grad_rho.comp) {
      std::vector<double> v(rho.grid().size());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = gc.nodal()[j] / rho.nodal()[j];
      out.comp.push_back(Field::from_nodal(rho.grid(), std::move(v)));
    }
    return out;
  }
  // gamma > 1: U'(rho) = gamma/(gamma-1) rho^(gamma-1), so
  // grad U' = gamma rho^(gamma-2) grad rho
  VectorField grad_rho = gradient(rho);
  Field w = pow_field(rho, gamma - 2.0);
  VectorField out;
  for (const auto& gc : grad_rho.comp) {
    Field prod = multiply(w, gc);
    out.comp.push_back(scale(prod, gamma));
  }
  return out;
}

VectorField well_prepared_velocity(const Field& rho0, const Params& p) {
  VectorField u = VectorField::zeros(rho0.grid());
  if (p.c_p != 0.0) {
    VectorField dU = internal_energy_gradient(rho0, p.gamma);
    u = add_scaled(u, -p.c_p, dU);
  }
  if (p.c_k != 0.0) {
    VectorField force = riesz_force(rho0, p.alpha);
    u = add_scaled(u, p.c_k, force);
  }
  return u;
}

Field initial_density(const PeriodicGrid& g, const InitialSpec& spec) {
  if (spec.profile == "uniform") return Field::constant(g, 1.0 / g.volume());

  if (spec.profile == "bump") {
    if (!(spec.amplitude >= 0.0 && spec.amplitude <= 0.9))
      throw validation_error("initial.amplitude: must lie in [0, 0.9]");
    if (spec.mode < 1 || spec.mode > g.n() / 3)
      throw validation_error("initial.mode: must lie in [1, n/3]");
    const double a = spec.amplitude;
    const double base = kTwoPi / g.length();
    const int k = spec.mode;
    Field rho =
        g.dim() == 1
            ? Field::sample(g, [&](double x) { return 1.0 + a * std::cos(base * k * x); })
            : Field::sample2(g, [&](double x, double y) {
                return (1.0 + a * std::cos(base * k * x)) * (1.0 + a * std::cos(base * k * y));
              });
    return scale(rho, 1.0 / rho.integral());
  }

  if (spec.profile == "gaussian") {
    if (!(spec.amplitude >= 0.0 && spec.amplitude <= 0.9))
      throw validation_error("initial.amplitude: must lie in [0, 0.9]");
    const double sigma = g.length() / 12.0;
    auto periodized = [&](double x) {
      double s = 0.0;
      for (int im = -3; im <= 3; ++im) {
        const double z = x + im * g.length();
        s += std::exp(-0.5 * z * z / (sigma * sigma));
      }
      return s;
    };
    Field bump = g.dim() == 1
                     ? Field::sample(g, periodized)
                     : Field::sample2(g, [&](double x, double y) {
                         return periodized(x) * periodized(y);
                       });
    Field unit_bump = scale(bump, 1.0 / bump.integral());
    Field rho = add_scaled(Field::constant(g, (1.0 - spec.amplitude) / g.volume()),
                           spec.amplitude, unit_bump);
    return scale(rho, 1.0 / rho.integral());
  }

  throw validation_error("initial.profile: unknown profile '" + spec.profile + "'");
}

}  // namespace relax
