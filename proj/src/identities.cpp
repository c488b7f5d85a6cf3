#include "identities.hpp"

#include <cmath>

namespace relax {

namespace {

void check_pair(const ErTrajectory& er, const FpmeTrajectory& lim) {
  if (er.size() != lim.size() || er.size() < 3)
    throw validation_error("identity check: trajectories must share >= 3 output times");
  for (std::size_t i = 0; i < er.size(); ++i)
    if (std::fabs(er.times[i] - lim.times[i]) > 1e-12)
      throw validation_error("identity check: output times differ");
}

double total_energy(const FluidState& s, const Params& p) {
  return kinetic_energy(s) + free_energy(s.rho, p) / p.epsilon;
}

}  // namespace

std::vector<double> energy_identity_residual(const ErTrajectory& traj, const Params& p) {
  if (traj.size() < 2) throw validation_error("energy residual: need >= 2 snapshots");
  std::vector<double> res;
  res.reserve(traj.size() - 1);
  std::vector<double> diss(traj.size());
  std::vector<double> energy(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    energy[i] = total_energy(traj.at(i), p);
    diss[i] =
        2.0 * modulated_kinetic(traj.at(i), VectorField::zeros(traj.at(i).grid())) /
        p.epsilon;
  }
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double dt = traj.times[i + 1] - traj.times[i];
    const double mid_diss = 0.5 * (diss[i] + diss[i + 1]);
    res.push_back((energy[i + 1] - energy[i]) / dt + mid_diss);
  }
  return res;
}

IdentitySeries modulated_internal_identity(const ErTrajectory& er,
                                           const FpmeTrajectory& lim, const Params& p) {
  check_pair(er, lim);
  IdentitySeries out;
  std::vector<double> modint(er.size());
  for (std::size_t i = 0; i < er.size(); ++i)
    modint[i] = modulated_internal(er.at(i).rho, lim.at(i).rho, p.gamma, 1.0);

  for (std::size_t i = 1; i + 1 < er.size(); ++i) {
    const double dt = er.times[i + 1] - er.times[i - 1];
    const double lhs = (modint[i + 1] - modint[i - 1]) / dt;

    const FluidState& s = er.at(i);
    const Field& rho_lim = lim.at(i).rho;
    VectorField u_er = velocity(s);
    VectorField u = limit_velocity(rho_lim, p);

    // transport term: int rho_er (u_er - u) . grad(U'(rho_er) - U'(rho_lim))
    VectorField dU = sub(internal_energy_gradient(s.rho, p.gamma),
                         internal_energy_gradient(rho_lim, p.gamma));
    double transport = 0.0;
    for (int c = 0; c < u.dim(); ++c) {
      Field weight = multiply(s.rho, sub(u_er[c], u[c]));
      transport += inner(weight, dU[c]);
    }
    // dilation term: -(gamma - 1) int U(rho_er | rho_lim) div u
    Field divu = divergence(u);
    double dilation = 0.0;
    const double cell = s.grid().cell();
    for (std::size_t j = 0; j < s.rho.nodal().size(); ++j)
      dilation += modulated_internal_pointwise(s.rho.nodal()[j], rho_lim.nodal()[j],
                                               p.gamma) *
                  divu.nodal()[j];
    dilation *= -(p.gamma - 1.0) * cell;

    const double rhs = transport + dilation;
    out.times.push_back(er.times[i]);
    out.lhs.push_back(lhs);
    out.rhs.push_back(rhs);
    out.residual.push_back(std::fabs(lhs - rhs));
    out.max_residual = std::max(out.max_residual, out.residual.back());
  }
  return out;
}

InteractionBoundReport modulated_interaction_bound(const ErTrajectory& er,
                                                   const FpmeTrajectory& lim,
                                                   const Params& p) {
  check_pair(er, lim);
  InteractionBoundReport out;
  std::vector<double> quad(er.size());
  for (std::size_t i = 0; i < er.size(); ++i) {
    Field diff = sub(er.at(i).rho, lim.at(i).rho);
    quad[i] = interaction_energy(diff, diff, p.alpha, p.d);
  }
  for (std::size_t i = 1; i + 1 < er.size(); ++i) {
    const double dt = er.times[i + 1] - er.times[i - 1];
    const double deriv = 0.5 * p.c_k * (quad[i + 1] - quad[i - 1]) / dt;

    const FluidState& s = er.at(i);
    Field diff = sub(s.rho, lim.at(i).rho);
    VectorField grad_pot = riesz_force(diff, p.alpha);  // grad Lambda^(alpha-d) diff
    VectorField du = sub(velocity(s), limit_velocity(lim.at(i).rho, p));
    double coupling = 0.0;
    for (int c = 0; c < du.dim(); ++c)
      coupling += inner(multiply(s.rho, du[c]), grad_pot[c]);
    coupling *= p.c_k;

    out.times.push_back(er.times[i]);
    out.lhs.push_back(deriv - coupling);
    out.quad_form.push_back(quad[i]);
    if (quad[i] > 1e-14)
      out.empirical_constant =
          std::max(out.empirical_constant, (deriv - coupling) / quad[i]);
  }
  return out;
}

ModulatedEnergyReport modulated_energy_inequality(const ErTrajectory& er,
                                                  const FpmeTrajectory& lim,
                                                  const Params& p) {
  check_pair(er, lim);
  ModulatedEnergyReport out;
  const std::size_t n = er.size();
  std::vector<double> mod_energy(n), diss(n), modint(n), quad(n);
  for (std::size_t i = 0; i < n; ++i) {
    VectorField u = limit_velocity(lim.at(i).rho, p);
    const double mk = modulated_kinetic(er.at(i), u);
    modint[i] = modulated_internal(er.at(i).rho, lim.at(i).rho, p.gamma, p.c_p);
    Field diff = sub(er.at(i).rho, lim.at(i).rho);
    quad[i] = interaction_energy(diff, diff, p.alpha, p.d);
    mod_energy[i] = mk + (modint[i] - 0.5 * p.c_k * quad[i]) / p.epsilon;
    diss[i] = 2.0 * mk;  // int rho |u_er - u|^2
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dt = er.times[i + 1] - er.times[i - 1];
    const double lhs =
        (mod_energy[i + 1] - mod_energy[i - 1]) / dt + 0.5 * diss[i] / p.epsilon;
    const double basis = p.c_p * (p.gamma - 1.0) / p.epsilon * modint[i] +
                         std::fabs(p.c_k) / p.epsilon * std::fabs(quad[i]) + p.epsilon;
    out.times.push_back(er.times[i]);
    out.lhs.push_back(lhs);
    out.rhs_basis.push_back(basis);
    out.empirical_constant = std::max(out.empirical_constant, std::max(lhs, 0.0) / basis);
  }
  return out;
}

}  // namespace relax
