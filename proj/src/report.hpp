#pragma once

#include <string>
#include <vector>

#include "energetics.hpp"

namespace relax {

// CSV schema (fixed header; absent quantities stay empty):
// t,mass,momentum_x[,momentum_y],kinetic,internal,interaction,free,total,
// mod_kinetic,mod_internal,mod_interaction,neg_sobolev_sq,lgamma_err_sq,
// l1_momentum_err_sq,d2_sq,dbl_momentum_sq
std::string csv_header(int dim);
std::string csv_row(const EnergyReport& r, int dim);
void write_csv(const std::string& path, int dim, const std::vector<EnergyReport>& rows);

// shortest-exact formatting used in all text outputs ("%.17g")
std::string format_double(double v);

}  // namespace relax
