#pragma once

#include <string>
#include <vector>

#include "euler_riesz.hpp"
#include "fpme.hpp"

namespace relax {

// Flat little-endian binary container: magic, version, grid header
// (d, n, length), named field list, then one block per snapshot
// (time followed by the nodal arrays in field-list order).
void save_trajectory(const std::string& path, const ErTrajectory& traj);
void save_trajectory(const std::string& path, const FpmeTrajectory& traj);
ErTrajectory load_er_trajectory(const std::string& path);
FpmeTrajectory load_fpme_trajectory(const std::string& path);

// single-snapshot container for ad-hoc field storage
struct StoredField {
  PeriodicGrid grid{1, 16};
  double time = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;
};
void save_field(const std::string& path, const StoredField& f);
StoredField load_field(const std::string& path);

}  // namespace relax
