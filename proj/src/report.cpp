#include "report.hpp"

#include <cstdio>
#include <fstream>

namespace relax {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_header(int dim) {
  std::string h = "t,mass,momentum_x";
  if (dim == 2) h += ",momentum_y";
  h += ",kinetic,internal,interaction,free,total,mod_kinetic,mod_internal,"
       "mod_interaction,neg_sobolev_sq,lgamma_err_sq,l1_momentum_err_sq,d2_sq,"
       "dbl_momentum_sq";
  return h;
}

namespace {

void append_opt(std::string& row, const std::optional<double>& v) {
  row += ',';
  if (v.has_value()) row += format_double(*v);
}

}  // namespace

std::string csv_row(const EnergyReport& r, int dim) {
  std::string row = format_double(r.time);
  row += ',' + format_double(r.mass);
  for (int c = 0; c < dim; ++c) {
    row += ',';
    row += c < static_cast<int>(r.total_momentum.size())
               ? format_double(r.total_momentum[c])
               : std::string();
  }
  row += ',' + format_double(r.kinetic);
  row += ',' + format_double(r.internal);
  row += ',' + format_double(r.interaction);
  row += ',' + format_double(r.free);
  row += ',' + format_double(r.total);
  append_opt(row, r.mod_kinetic);
  append_opt(row, r.mod_internal);
  append_opt(row, r.mod_interaction);
  append_opt(row, r.neg_sobolev_sq);
  append_opt(row, r.lgamma_err_sq);
  append_opt(row, r.l1_momentum_err_sq);
  append_opt(row, r.d2_sq);
  append_opt(row, r.dbl_momentum_sq);
  return row;
}

void write_csv(const std::string& path, int dim, const std::vector<EnergyReport>& rows) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot write '" + path + "'");
  os << csv_header(dim) << '\n';
  for (const auto& r : rows) os << csv_row(r, dim) << '\n';
}

}  // namespace relax
