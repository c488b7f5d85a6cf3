#include "fpme.hpp"

#include <cmath>
#include <sstream>

namespace relax {

Field rhs_fpme(const Field& rho, const Params& p) {
  Field out = Field::zeros(rho.grid());
  if (p.c_k != 0.0) {
    VectorField flux = multiply_dealias(rho, riesz_force(rho, p.alpha));
    out = add_scaled(out, -p.c_k, divergence(flux));
  }
  if (p.c_p != 0.0) {
    Field pg = p.gamma == 1.0 ? rho : dealias(pow_field(rho, p.gamma));
    out = add_scaled(out, p.c_p, laplacian(pg));
  }
  return out;
}

LimitState step_fpme(const LimitState& s, double dt, const Params& p) {
  if (!(dt > 0.0)) throw validation_error("step_fpme: dt must be positive");
  Field k1 = rhs_fpme(s.rho, p);
  Field k2 = rhs_fpme(add_scaled(s.rho, 0.5 * dt, k1), p);
  Field k3 = rhs_fpme(add_scaled(s.rho, 0.5 * dt, k2), p);
  Field k4 = rhs_fpme(add_scaled(s.rho, dt, k3), p);
  Field sum = add_scaled(add_scaled(add(k1, k4), 2.0, k2), 2.0, k3);
  LimitState out{add_scaled(s.rho, dt / 6.0, sum), s.time + dt};
  if (!(out.rho.max() < 1e6) || !std::isfinite(out.rho.max())) {
    std::ostringstream os;
    os << "fpme: instability guard tripped at t = " << out.time;
    throw numerical_error(os.str());
  }
  return out;
}

double stable_dt_fpme(const Field& rho, const Params& p, const StepPolicy& pol) {
  const PeriodicGrid& g = rho.grid();
  const double h = g.spacing();
  const double rho_max = std::max(rho.max(), density_floor(g));
  // stated parabolic cap: c h^2 / (c_p gamma rho^(gamma-1) + |c_k| |grad Lambda rho| h)
  double denom = p.c_p * p.gamma * std::pow(rho_max, p.gamma - 1.0);
  double force_max = 0.0;
  if (p.c_k != 0.0) {
    force_max = riesz_force(rho, p.alpha).max_abs();
    denom += std::fabs(p.c_k) * force_max * h;
  }
  double dt = pol.dt_max;
  if (denom > 0.0) dt = std::min(dt, pol.parabolic_constant * h * h / denom);
  // the fractional operator contributes a symbol |c_k| rho |k|^(2+alpha-d);
  // bound it at the dealias cutoff alongside the heat symbol
  const double k_cut = kTwoPi / g.length() * g.dealias_limit();
  double symbol = p.c_p * p.gamma * std::pow(rho_max, p.gamma - 1.0) * k_cut * k_cut;
  if (p.c_k != 0.0)
    symbol += std::fabs(p.c_k) * rho_max * std::pow(k_cut, 2.0 + p.alpha - p.d) +
              std::fabs(p.c_k) * force_max * k_cut;
  if (symbol > 0.0) dt = std::min(dt, 2.5 / symbol);
  return std::max(dt * pol.scale, pol.dt_min);
}

VectorField limit_velocity(const Field& rho, const Params& p) {
  VectorField u = VectorField::zeros(rho.grid());
  if (p.c_p != 0.0) u = add_scaled(u, -p.c_p, internal_energy_gradient(rho, p.gamma));
  if (p.c_k != 0.0) u = add_scaled(u, p.c_k, riesz_force(rho, p.alpha));
  return u;
}

FpmeTrajectory run_fpme(const LimitState& initial, const Params& p, const StepPolicy& pol,
                        double t_end, const FpmeRunOptions& opt) {
  pol.validate();
  if (t_end < 0.0) throw validation_error("run_fpme: t_end must be >= 0");
  initial.validate();

  std::vector<double> outs = opt.output_times;
  if (outs.empty()) outs = {0.0, t_end};
  if (outs.front() != 0.0) throw validation_error("run_fpme: output times must start at 0");

  FpmeTrajectory traj;
  auto emit = [&](const LimitState& st) {
    traj.times.push_back(st.time);
    traj.snaps.push_back(st);
    if (opt.on_snapshot) opt.on_snapshot(st);
  };

  LimitState cur = initial;
  cur.time = 0.0;
  std::size_t next_out = 0;
  if (outs[0] == 0.0) {
    emit(cur);
    ++next_out;
  }
  if (t_end == 0.0) return traj;

  while (cur.time < t_end - 1e-14 * std::max(1.0, t_end)) {
    double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt : stable_dt_fpme(cur.rho, p, pol);
    dt = std::min(dt, t_end - cur.time + 1e-16);
    LimitState next = step_fpme(cur, dt, p);
    if (opt.on_step) opt.on_step(next);
    while (next_out < outs.size() && outs[next_out] <= next.time + 1e-13) {
      const double t = std::min(outs[next_out], next.time);
      const double w = (t - cur.time) / (next.time - cur.time);
      emit(LimitState{add_scaled(scale(cur.rho, 1.0 - w), w, next.rho), t});
      ++next_out;
    }
    cur = std::move(next);
  }
  while (next_out < outs.size()) {
    LimitState last = cur;
    last.time = outs[next_out++];
    emit(last);
  }
  return traj;
}

LimitAcceleration limit_acceleration(const FpmeTrajectory& traj, std::size_t i,
                                     const Params& p) {
  if (traj.size() < 2) throw validation_error("limit_acceleration: need >= 2 snapshots");
  LimitAcceleration out;
  std::size_t lo, hi;
  if (i == 0) {
    lo = 0;
    hi = 1;
    out.one_sided = true;
  } else if (i + 1 == traj.size()) {
    lo = traj.size() - 2;
    hi = traj.size() - 1;
    out.one_sided = true;
  } else {
    lo = i - 1;
    hi = i + 1;
  }
  VectorField u_lo = traj.velocity_at(lo, p);
  VectorField u_hi = traj.velocity_at(hi, p);
  const double dt = traj.times[hi] - traj.times[lo];
  VectorField dudt = scale(sub(u_hi, u_lo), 1.0 / dt);

  VectorField u = traj.velocity_at(i, p);
  const PeriodicGrid& g = traj.at(i).grid();
  VectorField adv = VectorField::zeros(g);
  for (int c = 0; c < g.dim(); ++c) {
    Field acc = Field::zeros(g);
    for (int j = 0; j < g.dim(); ++j)
      acc = add(acc, multiply_dealias(u[j], derivative(u[c], j)));
    adv[c] = acc;
  }
  out.e = add(dudt, adv);
  return out;
}

}  // namespace relax
