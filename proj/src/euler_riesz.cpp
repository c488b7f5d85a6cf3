#include "euler_riesz.hpp"

#include <cmath>
#include <sstream>

namespace relax {

void StepPolicy::validate() const {
  if (!(cfl > 0.0) || !(epsilon_fraction > 0.0) || !(dt_min > 0.0) || !(dt_max > 0.0) ||
      !(parabolic_constant > 0.0) || !(scale > 0.0))
    throw validation_error("step policy: all entries must be positive");
  if (dt_min > dt_max) throw validation_error("step policy: dt_min > dt_max");
}

namespace {

Field pressure(const Field& rho, double gamma) {
  // p(rho) = rho^gamma; gamma = 1 needs no nonlinear evaluation
  if (gamma == 1.0) return rho;
  return dealias(pow_field(rho, gamma));
}

void guard(const FluidState& s, double time) {
  const double umax = velocity(s).max_abs();
  if (!(s.rho.max() < 1e6) || !(umax < 1e6) || !std::isfinite(umax)) {
    std::ostringstream os;
    os << "euler-riesz: instability guard tripped at t = " << time;
    throw numerical_error(os.str());
  }
}

}  // namespace

EulerRieszRhs rhs_euler_riesz(const FluidState& s, const Params& p) {
  const PeriodicGrid& g = s.grid();
  VectorField u = velocity(s);

  EulerRieszRhs out;
  out.damping_rate = 1.0 / p.epsilon;
  out.drho = scale(divergence(VectorField(s.m)), -1.0);

  // advection: -div(m x u), row i: -sum_j d_j (m_i u_j)
  VectorField dm = VectorField::zeros(g);
  for (int i = 0; i < g.dim(); ++i) {
    Field acc = Field::zeros(g);
    for (int j = 0; j < g.dim(); ++j)
      acc = add(acc, derivative(multiply_dealias(s.m[i], u[j]), j));
    dm[i] = scale(acc, -1.0);
  }

  if (p.c_p != 0.0) {
    VectorField grad_p = gradient(pressure(s.rho, p.gamma));
    dm = add_scaled(dm, -p.c_p / p.epsilon, grad_p);
  }
  if (p.c_k != 0.0) {
    VectorField force = multiply_dealias(s.rho, riesz_force(s.rho, p.alpha));
    dm = add_scaled(dm, p.c_k / p.epsilon, force);
  }
  out.dm = std::move(dm);
  return out;
}

FluidState step_euler_riesz(const FluidState& s, double dt, const Params& p) {
  if (!(dt > 0.0)) throw validation_error("step: dt must be positive");
  const double lam1 = std::exp(-dt / p.epsilon);       // full-step damping
  const double lamh = std::exp(-0.5 * dt / p.epsilon); // half-step damping

  EulerRieszRhs k0 = rhs_euler_riesz(s, p);
  FluidState s1{add_scaled(s.rho, dt, k0.drho),
                scale(add_scaled(s.m, dt, k0.dm), lam1), s.time + dt};

  EulerRieszRhs k1 = rhs_euler_riesz(s1, p);
  // stage value at t + dt/2: 3/4 of the base state damped a half step plus
  // 1/4 of the stage-1 update pulled back by e^{+dt/(2 eps)}
  FluidState s2{add_scaled(scale(s.rho, 0.75), 0.25, add_scaled(s1.rho, dt, k1.drho)),
                add_scaled(scale(s.m, 0.75 * lamh), 0.25 / lamh,
                           add_scaled(s1.m, dt, k1.dm)),
                s.time + 0.5 * dt};

  EulerRieszRhs k2 = rhs_euler_riesz(s2, p);
  FluidState out{
      add_scaled(scale(s.rho, 1.0 / 3.0), 2.0 / 3.0, add_scaled(s2.rho, dt, k2.drho)),
      add_scaled(scale(s.m, lam1 / 3.0), 2.0 * lamh / 3.0, add_scaled(s2.m, dt, k2.dm)),
      s.time + dt};
  guard(out, out.time);
  return out;
}

double stable_dt_euler_riesz(const FluidState& s, const Params& p, const StepPolicy& pol) {
  const PeriodicGrid& g = s.grid();
  const double h = g.spacing();
  const double rho_max = std::max(s.rho.max(), density_floor(g));
  const double u_max = velocity(s).max_abs();
  // acoustic speed sqrt(c_p gamma rho^(gamma-1) / eps)
  const double c_s = p.c_p > 0.0
                         ? std::sqrt(p.c_p * p.gamma * std::pow(rho_max, p.gamma - 1.0) /
                                     p.epsilon)
                         : 0.0;
  // interaction wave speed at the dealias cutoff: dispersion
  // omega^2 = |c_k| rho |k|^(2 + alpha - d) / eps, expressed as omega/k there
  const double k_cut = kTwoPi / g.length() * g.dealias_limit();
  const double c_int =
      p.c_k != 0.0
          ? std::sqrt(std::fabs(p.c_k) * rho_max * std::pow(k_cut, p.alpha - p.d) /
                      p.epsilon)
          : 0.0;
  const double speed = u_max + c_s + c_int;
  double dt = pol.dt_max;
  if (speed > 0.0) dt = std::min(dt, pol.cfl * h / speed);
  dt = std::min(dt, pol.epsilon_fraction * p.epsilon);
  dt = std::max(dt * pol.scale, pol.dt_min);
  return dt;
}

namespace {

FluidState lerp_state(const FluidState& a, const FluidState& b, double t) {
  const double w = (t - a.time) / (b.time - a.time);
  FluidState out{add_scaled(scale(a.rho, 1.0 - w), w, b.rho),
                 add_scaled(scale(a.m, 1.0 - w), w, b.m), t};
  return out;
}

}  // namespace

ErTrajectory run_er(const FluidState& initial, const Params& p, const StepPolicy& pol,
                    double t_end, const RunOptions& opt) {
  pol.validate();
  if (t_end < 0.0) throw validation_error("run: t_end must be >= 0");
  initial.validate();

  std::vector<double> outs = opt.output_times;
  if (outs.empty()) outs = {0.0, t_end};
  if (outs.front() != 0.0) throw validation_error("run: output times must start at 0");

  ErTrajectory traj;
  auto emit = [&](const FluidState& st) {
    traj.times.push_back(st.time);
    traj.snaps.push_back(st);
    if (opt.on_snapshot) opt.on_snapshot(st);
  };

  FluidState cur = initial;
  cur.time = 0.0;
  std::size_t next_out = 0;
  if (outs[0] == 0.0) {
    emit(cur);
    ++next_out;
  }
  if (t_end == 0.0) return traj;

  while (cur.time < t_end - 1e-14 * std::max(1.0, t_end)) {
    double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt : stable_dt_euler_riesz(cur, p, pol);
    dt = std::min(dt, t_end - cur.time + 1e-16);
    FluidState next = step_euler_riesz(cur, dt, p);
    if (opt.on_step) opt.on_step(next);
    while (next_out < outs.size() && outs[next_out] <= next.time + 1e-13) {
      emit(lerp_state(cur, next, std::min(outs[next_out], next.time)));
      ++next_out;
    }
    cur = std::move(next);
  }
  while (next_out < outs.size()) {  // clamp trailing outputs to the final state
    FluidState last = cur;
    last.time = outs[next_out++];
    emit(last);
  }
  return traj;
}

}  // namespace relax
