#pragma once

#include <cstdint>
#include <string>

#include "config.hpp"
#include "sweep.hpp"

namespace relax {

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool has_seed = false;
  std::uint64_t seed = 0;  // overrides the config seed when has_seed
  int threads = 1;
  bool force = false;
};

// Creates the output directory if needed. Refuses to reuse a directory whose
// recorded config hash differs, unless force is set.
void prepare_out_dir(const std::string& dir, const std::string& hash, bool force);

// simulate-er / simulate-fpme: writes trajectory.bin, series.csv, meta.json
void run_simulate(const std::string& kind, const CliOptions& opt);

// sweep: writes sweep.json, per-epsilon CSV series, meta.json
SweepResult run_sweep_command(const CliOptions& opt);

// verify: writes <study>.json; returns the PASS flag
bool run_verify_command(const std::string& study, const CliOptions& opt);

// ad-hoc distance between two stored scalar fields
double field_distance(const std::string& file_a, const std::string& file_b,
                      const std::string& metric);

// density construction including the file: profile
Field build_initial_density(const PeriodicGrid& g, const InitialSpec& spec);

}  // namespace relax
