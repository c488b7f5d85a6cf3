#pragma once

#include <functional>
#include <vector>

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

namespace relax {

struct StepPolicy {
  double cfl = 0.4;
  double epsilon_fraction = 0.25;   // cap dt <= epsilon_fraction * epsilon
  double dt_min = 1e-12;
  double dt_max = 0.05;
  double parabolic_constant = 0.2;  // limit-equation cap c h^2 / (...)
  double scale = 1.0;               // extra multiplier on the adaptive dt

  void validate() const;
};

// Semi-discrete tendencies. The linear damping is returned as a rate and
// integrated exactly by the stepper; everything else is explicit.
struct EulerRieszRhs {
  Field drho;           // -div m
  VectorField dm;       // advection + (1/eps)(pressure + interaction) forces
  double damping_rate;  // 1/eps
};

EulerRieszRhs rhs_euler_riesz(const FluidState& s, const Params& p);

// One step of strong-stability-preserving RK3 with the damping integrated by
// exact exponential factors per stage. Mass is conserved to round-off.
FluidState step_euler_riesz(const FluidState& s, double dt, const Params& p);

// largest stable dt at the current state under the policy
double stable_dt_euler_riesz(const FluidState& s, const Params& p, const StepPolicy& pol);

struct ErTrajectory {
  std::vector<double> times;
  std::vector<FluidState> snaps;

  const FluidState& at(std::size_t i) const { return snaps.at(i); }
  std::size_t size() const { return times.size(); }
};

struct RunOptions {
  std::vector<double> output_times;  // must start at 0 and increase
  double fixed_dt = 0.0;             // 0 -> adaptive
  // called after every accepted step with the current state
  std::function<void(const FluidState&)> on_step;
  // called for every emitted snapshot (time-interpolated to the output grid)
  std::function<void(const FluidState&)> on_snapshot;
};

// Advances to t_end, sampling snapshots on the output grid by linear
// interpolation in time. Throws numerical_error with a time stamp if the
// blow-up guard trips.
ErTrajectory run_er(const FluidState& initial, const Params& p, const StepPolicy& pol,
                    double t_end, const RunOptions& opt);

}  // namespace relax
