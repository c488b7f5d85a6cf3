#include "grid.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace relax {

namespace {

// Phase (-1)^(sum of integer frequencies) relating node coordinates on
// [-L/2, L/2) to FFT index space; parity of the flat index sum.
inline double phase1(int i) { return (i & 1) ? -1.0 : 1.0; }

void check_grid(const PeriodicGrid& a, const PeriodicGrid& b, const char* op) {
  if (a != b) throw validation_error(std::string(op) + ": fields live on different grids");
}

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int n, double length)
    : dim_(dim), n_(n), length_(length) {
  if (dim != 1 && dim != 2) throw validation_error("grid: d must be 1 or 2");
  if (n < 16 || n % 2 != 0) throw validation_error("grid: n must be even and >= 16");
  if (!(length > 0.0)) throw validation_error("grid: length must be positive");
}

Field Field::zeros(const PeriodicGrid& g) {
  Field f;
  f.grid_ = g;
  f.nodal_.assign(g.size(), 0.0);
  f.spec_.assign(g.size(), {0.0, 0.0});
  return f;
}

Field Field::constant(const PeriodicGrid& g, double c) {
  Field f = zeros(g);
  std::fill(f.nodal_.begin(), f.nodal_.end(), c);
  f.spec_[0] = c;
  return f;
}

Field Field::from_nodal(const PeriodicGrid& g, std::vector<double> v) {
  if (v.size() != g.size()) throw validation_error("field: nodal size mismatch");
  Field f;
  f.grid_ = g;
  f.nodal_ = std::move(v);
  std::vector<std::complex<double>> buf(g.size());
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = f.nodal_[j];
  dft(g.dim(), g.n(), buf.data(), -1);
  const double inv = 1.0 / static_cast<double>(g.size());
  f.spec_.resize(g.size());
  if (g.dim() == 1) {
    for (int i = 0; i < g.n(); ++i) f.spec_[i] = phase1(i) * inv * buf[i];
  } else {
    for (int i0 = 0; i0 < g.n(); ++i0)
      for (int i1 = 0; i1 < g.n(); ++i1) {
        std::size_t idx = static_cast<std::size_t>(i0) * g.n() + i1;
        f.spec_[idx] = phase1(i0 + i1) * inv * buf[idx];
      }
  }
  return f;
}

Field Field::from_spectral(const PeriodicGrid& g, std::vector<std::complex<double>> c) {
  if (c.size() != g.size()) throw validation_error("field: spectral size mismatch");
  Field f;
  f.grid_ = g;
  f.spec_ = std::move(c);
  std::vector<std::complex<double>> buf(g.size());
  if (g.dim() == 1) {
    for (int i = 0; i < g.n(); ++i) buf[i] = phase1(i) * f.spec_[i];
  } else {
    for (int i0 = 0; i0 < g.n(); ++i0)
      for (int i1 = 0; i1 < g.n(); ++i1) {
        std::size_t idx = static_cast<std::size_t>(i0) * g.n() + i1;
        buf[idx] = phase1(i0 + i1) * f.spec_[idx];
      }
  }
  dft(g.dim(), g.n(), buf.data(), +1);
  f.nodal_.resize(g.size());
  for (std::size_t j = 0; j < buf.size(); ++j) f.nodal_[j] = buf[j].real();
  return f;
}

Field Field::sample(const PeriodicGrid& g, const std::function<double(double)>& f) {
  if (g.dim() != 1) throw validation_error("field: sample(f(x)) needs a 1-d grid");
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n(); ++i) v[i] = f(g.node(i));
  return from_nodal(g, std::move(v));
}

Field Field::sample2(const PeriodicGrid& g,
                     const std::function<double(double, double)>& f) {
  if (g.dim() != 2) throw validation_error("field: sample2 needs a 2-d grid");
  std::vector<double> v(g.size());
  for (int i0 = 0; i0 < g.n(); ++i0)
    for (int i1 = 0; i1 < g.n(); ++i1)
      v[static_cast<std::size_t>(i0) * g.n() + i1] = f(g.node(i0), g.node(i1));
  return from_nodal(g, std::move(v));
}

double Field::min() const { return *std::min_element(nodal_.begin(), nodal_.end()); }
double Field::max() const { return *std::max_element(nodal_.begin(), nodal_.end()); }
double Field::max_abs() const {
  double m = 0.0;
  for (double v : nodal_) m = std::max(m, std::fabs(v));
  return m;
}

VectorField VectorField::zeros(const PeriodicGrid& g) {
  VectorField v;
  for (int k = 0; k < g.dim(); ++k) v.comp.push_back(Field::zeros(g));
  return v;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& f : comp) m = std::max(m, f.max_abs());
  return m;
}

namespace {

// applies a per-mode complex multiplier given (freq0, freq1)
template <typename M>
Field apply_multiplier(const Field& f, M&& mult) {
  const PeriodicGrid& g = f.grid();
  std::vector<std::complex<double>> c(g.size());
  if (g.dim() == 1) {
    for (int i = 0; i < g.n(); ++i) c[i] = mult(g.freq(i), 0) * f.spectral()[i];
  } else {
    for (int i0 = 0; i0 < g.n(); ++i0)
      for (int i1 = 0; i1 < g.n(); ++i1) {
        std::size_t idx = static_cast<std::size_t>(i0) * g.n() + i1;
        c[idx] = mult(g.freq(i0), g.freq(i1)) * f.spectral()[idx];
      }
  }
  return Field::from_spectral(g, std::move(c));
}

}  // namespace

Field derivative(const Field& f, int axis) {
  const PeriodicGrid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw validation_error("derivative: bad axis");
  const double base = kTwoPi / g.length();
  const int nyq = g.n() / 2;
  return apply_multiplier(f, [&](int k0, int k1) -> std::complex<double> {
    int k = axis == 0 ? k0 : k1;
    if (k == nyq) return {0.0, 0.0};
    return {0.0, base * k};
  });
}

VectorField gradient(const Field& f) {
  VectorField v;
  for (int a = 0; a < f.grid().dim(); ++a) v.comp.push_back(derivative(f, a));
  return v;
}

Field divergence(const VectorField& v) {
  Field out = derivative(v.comp.at(0), 0);
  for (int a = 1; a < v.dim(); ++a) out = add(out, derivative(v.comp[a], a));
  return out;
}

Field laplacian(const Field& f) {
  const double base = kTwoPi / f.grid().length();
  return apply_multiplier(f, [&](int k0, int k1) {
    double kk = base * base * (static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
    return std::complex<double>(-kk, 0.0);
  });
}

Field fractional_laplacian(const Field& f, double s) {
  if (!(s > -2.0 && s < 2.0))
    throw validation_error("fractional_laplacian: order must lie in (-2, 2)");
  const double base = kTwoPi / f.grid().length();
  return apply_multiplier(f, [&](int k0, int k1) -> std::complex<double> {
    if (k0 == 0 && k1 == 0) return s == 0.0 ? 1.0 : 0.0;
    double k = base * std::sqrt(static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1);
    return std::pow(k, s);
  });
}

VectorField riesz_force(const Field& rho, double alpha) {
  const int d = rho.grid().dim();
  if (!(alpha > std::max(0.0, d - 2.0) && alpha < d))
    throw validation_error("riesz_force: alpha must lie in (max(0, d-2), d)");
  return gradient(fractional_laplacian(rho, alpha - d));
}

Field dealias(const Field& f) {
  const int n = f.grid().n();
  return apply_multiplier(f, [&](int k0, int k1) -> std::complex<double> {
    if (3 * std::abs(k0) > n || 3 * std::abs(k1) > n) return 0.0;
    return 1.0;
  });
}

VectorField dealias(const VectorField& v) {
  VectorField out;
  for (const auto& f : v.comp) out.comp.push_back(dealias(f));
  return out;
}

Field multiply(const Field& a, const Field& b) {
  check_grid(a.grid(), b.grid(), "multiply");
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.nodal()[j] * b.nodal()[j];
  return Field::from_nodal(a.grid(), std::move(v));
}

Field multiply_dealias(const Field& a, const Field& b) { return dealias(multiply(a, b)); }

Field pow_field(const Field& a, double p) {
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::pow(a.nodal()[j], p);
  return Field::from_nodal(a.grid(), std::move(v));
}

Field add(const Field& a, const Field& b) {
  check_grid(a.grid(), b.grid(), "add");
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.nodal()[j] + b.nodal()[j];
  return Field::from_nodal(a.grid(), std::move(v));
}

Field sub(const Field& a, const Field& b) {
  check_grid(a.grid(), b.grid(), "sub");
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.nodal()[j] - b.nodal()[j];
  return Field::from_nodal(a.grid(), std::move(v));
}

Field scale(const Field& a, double s) {
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = s * a.nodal()[j];
  return Field::from_nodal(a.grid(), std::move(v));
}

Field add_scaled(const Field& a, double s, const Field& b) {
  check_grid(a.grid(), b.grid(), "add_scaled");
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.nodal()[j] + s * b.nodal()[j];
  return Field::from_nodal(a.grid(), std::move(v));
}

Field apply(const Field& a, const std::function<double(double)>& f) {
  std::vector<double> v(a.grid().size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(a.nodal()[j]);
  return Field::from_nodal(a.grid(), std::move(v));
}

VectorField add(const VectorField& a, const VectorField& b) {
  VectorField out;
  for (int k = 0; k < a.dim(); ++k) out.comp.push_back(add(a[k], b[k]));
  return out;
}

VectorField sub(const VectorField& a, const VectorField& b) {
  VectorField out;
  for (int k = 0; k < a.dim(); ++k) out.comp.push_back(sub(a[k], b[k]));
  return out;
}

VectorField scale(const VectorField& a, double s) {
  VectorField out;
  for (const auto& f : a.comp) out.comp.push_back(scale(f, s));
  return out;
}

VectorField add_scaled(const VectorField& a, double s, const VectorField& b) {
  VectorField out;
  for (int k = 0; k < a.dim(); ++k) out.comp.push_back(add_scaled(a[k], s, b[k]));
  return out;
}

VectorField multiply(const Field& a, const VectorField& b) {
  VectorField out;
  for (const auto& f : b.comp) out.comp.push_back(multiply(a, f));
  return out;
}

VectorField multiply_dealias(const Field& a, const VectorField& b) {
  VectorField out;
  for (const auto& f : b.comp) out.comp.push_back(multiply_dealias(a, f));
  return out;
}

double integral_nodal(const Field& f) {
  double s = 0.0;
  for (double v : f.nodal()) s += v;
  return s * f.grid().cell();
}

double inner(const Field& a, const Field& b) {
  check_grid(a.grid(), b.grid(), "inner");
  double s = 0.0;
  for (std::size_t j = 0; j < a.nodal().size(); ++j) s += a.nodal()[j] * b.nodal()[j];
  return s * a.grid().cell();
}

double norm_l2(const Field& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

}  // namespace relax
