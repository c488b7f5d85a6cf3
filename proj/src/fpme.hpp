#pragma once

#include <functional>
#include <vector>

#include "euler_riesz.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace relax {

// d rho/dt = -c_k div(rho grad Lambda^(alpha-d) rho) + c_p Lap(rho^gamma)
Field rhs_fpme(const Field& rho, const Params& p);

// classical RK4; mass conserved to round-off
LimitState step_fpme(const LimitState& s, double dt, const Params& p);

double stable_dt_fpme(const Field& rho, const Params& p, const StepPolicy& pol);

// velocity of the constitutive law u(rho) = -c_p grad U'(rho) + c_k grad Lambda rho,
// satisfying rhs_fpme(rho) = -div(rho u(rho))
VectorField limit_velocity(const Field& rho, const Params& p);

struct FpmeTrajectory {
  std::vector<double> times;
  std::vector<LimitState> snaps;

  const LimitState& at(std::size_t i) const { return snaps.at(i); }
  std::size_t size() const { return times.size(); }
  VectorField velocity_at(std::size_t i, const Params& p) const {
    return limit_velocity(snaps.at(i).rho, p);
  }
};

struct FpmeRunOptions {
  std::vector<double> output_times;
  double fixed_dt = 0.0;
  std::function<void(const LimitState&)> on_step;
  std::function<void(const LimitState&)> on_snapshot;
};

FpmeTrajectory run_fpme(const LimitState& initial, const Params& p, const StepPolicy& pol,
                        double t_end, const FpmeRunOptions& opt);

// material acceleration du/dt + (u.grad)u of the limit flow at snapshot i,
// with du/dt from centered differences of the stored neighbors (one-sided and
// flagged at the trajectory endpoints).
struct LimitAcceleration {
  VectorField e;
  bool one_sided = false;
};
LimitAcceleration limit_acceleration(const FpmeTrajectory& traj, std::size_t i,
                                     const Params& p);

}  // namespace relax
