#include "trajectory.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace relax {

namespace {

constexpr char kTrajMagic[8] = {'R', 'E', 'L', 'X', 'T', 'R', 'J', '1'};
constexpr char kFieldMagic[8] = {'R', 'E', 'L', 'X', 'F', 'L', 'D', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
         (std::uint32_t(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

void put_string(std::ostream& os, const std::string& s) {
  put_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& is) {
  std::uint32_t len = get_u32(is);
  std::string s(len, '\0');
  is.read(s.data(), len);
  return s;
}

void put_array(std::ostream& os, const std::vector<double>& v) {
  for (double x : v) put_f64(os, x);
}

std::vector<double> get_array(std::istream& is, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = get_f64(is);
  return v;
}

struct Header {
  PeriodicGrid grid{1, 16};
  std::vector<std::string> names;
  std::uint32_t snapshots = 0;
};

void write_header(std::ostream& os, const char* magic, const PeriodicGrid& g,
                  const std::vector<std::string>& names, std::uint32_t snaps) {
  os.write(magic, 8);
  put_u32(os, static_cast<std::uint32_t>(g.dim()));
  put_u32(os, static_cast<std::uint32_t>(g.n()));
  put_f64(os, g.length());
  put_u32(os, static_cast<std::uint32_t>(names.size()));
  for (const auto& n : names) put_string(os, n);
  put_u32(os, snaps);
}

Header read_header(std::istream& is, const char* magic, const std::string& path) {
  char got[8];
  is.read(got, 8);
  if (!is || std::memcmp(got, magic, 8) != 0)
    throw validation_error("file '" + path + "': unrecognized format");
  Header h;
  const int d = static_cast<int>(get_u32(is));
  const int n = static_cast<int>(get_u32(is));
  const double length = get_f64(is);
  h.grid = PeriodicGrid(d, n, length);
  const std::uint32_t nf = get_u32(is);
  for (std::uint32_t i = 0; i < nf; ++i) h.names.push_back(get_string(is));
  h.snapshots = get_u32(is);
  if (!is) throw validation_error("file '" + path + "': truncated header");
  return h;
}

std::vector<std::string> momentum_names(int dim) {
  return dim == 1 ? std::vector<std::string>{"rho", "mx"}
                  : std::vector<std::string>{"rho", "mx", "my"};
}

}  // namespace

void save_trajectory(const std::string& path, const ErTrajectory& traj) {
  if (traj.snaps.empty()) throw validation_error("save_trajectory: empty trajectory");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot write '" + path + "'");
  const PeriodicGrid& g = traj.snaps.front().grid();
  write_header(os, kTrajMagic, g, momentum_names(g.dim()),
               static_cast<std::uint32_t>(traj.size()));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    put_f64(os, traj.times[i]);
    put_array(os, traj.snaps[i].rho.nodal());
    for (const auto& mc : traj.snaps[i].m.comp) put_array(os, mc.nodal());
  }
}

void save_trajectory(const std::string& path, const FpmeTrajectory& traj) {
  if (traj.snaps.empty()) throw validation_error("save_trajectory: empty trajectory");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot write '" + path + "'");
  const PeriodicGrid& g = traj.snaps.front().grid();
  write_header(os, kTrajMagic, g, {"rho"}, static_cast<std::uint32_t>(traj.size()));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    put_f64(os, traj.times[i]);
    put_array(os, traj.snaps[i].rho.nodal());
  }
}

ErTrajectory load_er_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw validation_error("cannot read '" + path + "'");
  Header h = read_header(is, kTrajMagic, path);
  if (h.names != momentum_names(h.grid.dim()))
    throw validation_error("file '" + path + "': not a fluid trajectory");
  ErTrajectory traj;
  for (std::uint32_t s = 0; s < h.snapshots; ++s) {
    const double t = get_f64(is);
    Field rho = Field::from_nodal(h.grid, get_array(is, h.grid.size()));
    VectorField m;
    for (int c = 0; c < h.grid.dim(); ++c)
      m.comp.push_back(Field::from_nodal(h.grid, get_array(is, h.grid.size())));
    traj.times.push_back(t);
    traj.snaps.push_back(FluidState{std::move(rho), std::move(m), t});
  }
  if (!is) throw validation_error("file '" + path + "': truncated data");
  return traj;
}

FpmeTrajectory load_fpme_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw validation_error("cannot read '" + path + "'");
  Header h = read_header(is, kTrajMagic, path);
  if (h.names != std::vector<std::string>{"rho"})
    throw validation_error("file '" + path + "': not a limit trajectory");
  FpmeTrajectory traj;
  for (std::uint32_t s = 0; s < h.snapshots; ++s) {
    const double t = get_f64(is);
    Field rho = Field::from_nodal(h.grid, get_array(is, h.grid.size()));
    traj.times.push_back(t);
    traj.snaps.push_back(LimitState{std::move(rho), t});
  }
  if (!is) throw validation_error("file '" + path + "': truncated data");
  return traj;
}

void save_field(const std::string& path, const StoredField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot write '" + path + "'");
  write_header(os, kFieldMagic, f.grid, f.names, 1);
  put_f64(os, f.time);
  for (const auto& arr : f.data) {
    if (arr.size() != f.grid.size())
      throw validation_error("save_field: array size mismatch");
    put_array(os, arr);
  }
}

StoredField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw validation_error("cannot read '" + path + "'");
  Header h = read_header(is, kFieldMagic, path);
  StoredField f;
  f.grid = h.grid;
  f.names = h.names;
  f.time = get_f64(is);
  for (std::size_t i = 0; i < h.names.size(); ++i)
    f.data.push_back(get_array(is, h.grid.size()));
  if (!is) throw validation_error("file '" + path + "': truncated data");
  return f;
}

}  // namespace relax
