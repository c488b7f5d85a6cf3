#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace relax {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform periodic lattice on [-L/2, L/2)^d, d in {1,2}, n even nodes per axis.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int n, double length = kTwoPi);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double volume() const { return dim_ == 1 ? length_ : length_ * length_; }
  std::size_t size() const {
    return dim_ == 1 ? static_cast<std::size_t>(n_)
                     : static_cast<std::size_t>(n_) * n_;
  }
  double cell() const { return dim_ == 1 ? spacing() : spacing() * spacing(); }

  double node(int i) const { return -0.5 * length_ + spacing() * i; }

  // signed integer frequency for axis index i in [0, n)
  int freq(int i) const { return i <= n_ / 2 ? i : i - n_; }
  double wavenumber(int i) const { return kTwoPi * freq(i) / length_; }
  int dealias_limit() const { return n_ / 3; }

  bool operator==(const PeriodicGrid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
  }
  bool operator!=(const PeriodicGrid& o) const { return !(*this == o); }

 private:
  int dim_;
  int n_;
  double length_;
};

// Real scalar field. Nodal values and spectral coefficients are both held and
// kept consistent at construction, so instances are immutable snapshots and
// safe to share across threads. Coefficient convention:
//   coeff(k) = (1/n^d) sum_x f(x) exp(-i k.x),  x actual node coordinates.
class Field {
 public:
  Field() : grid_(1, 16) {}

  static Field zeros(const PeriodicGrid& g);
  static Field constant(const PeriodicGrid& g, double c);
  static Field from_nodal(const PeriodicGrid& g, std::vector<double> v);
  static Field from_spectral(const PeriodicGrid& g, std::vector<std::complex<double>> c);
  static Field sample(const PeriodicGrid& g, const std::function<double(double)>& f);
  static Field sample2(const PeriodicGrid& g,
                       const std::function<double(double, double)>& f);

  const PeriodicGrid& grid() const { return grid_; }
  const std::vector<double>& nodal() const { return nodal_; }
  const std::vector<std::complex<double>>& spectral() const { return spec_; }

  double mean() const { return spec_[0].real(); }
  double integral() const { return spec_[0].real() * grid_.volume(); }
  double min() const;
  double max() const;
  double max_abs() const;

 private:
  PeriodicGrid grid_;
  std::vector<double> nodal_;
  std::vector<std::complex<double>> spec_;
};

struct VectorField {
  std::vector<Field> comp;

  VectorField() = default;
  explicit VectorField(std::vector<Field> c) : comp(std::move(c)) {}
  static VectorField zeros(const PeriodicGrid& g);

  int dim() const { return static_cast<int>(comp.size()); }
  const PeriodicGrid& grid() const { return comp.at(0).grid(); }
  const Field& operator[](int i) const { return comp[i]; }
  Field& operator[](int i) { return comp[i]; }
  double max_abs() const;
};

// ---- spectral operators ----

// d/dx_axis via the ik multiplier; the Nyquist mode is zeroed to keep
// odd-order derivatives real.
Field derivative(const Field& f, int axis);
VectorField gradient(const Field& f);
Field divergence(const VectorField& v);
Field laplacian(const Field& f);

// |k|^s multiplier, s in (-2,2). Zero mode: untouched for s = 0, zeroed
// otherwise (mean-zero convention for negative orders).
Field fractional_laplacian(const Field& f, double s);

// grad(fractional_laplacian(rho, alpha - d)); alpha in (max(0,d-2), d).
VectorField riesz_force(const Field& rho, double alpha);

// two-thirds rule: zero every coefficient with any |freq| > n/3
Field dealias(const Field& f);
VectorField dealias(const VectorField& v);

// ---- pointwise and arithmetic helpers (nodal) ----

Field multiply(const Field& a, const Field& b);
Field multiply_dealias(const Field& a, const Field& b);
Field pow_field(const Field& a, double p);
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, double s);
Field add_scaled(const Field& a, double s, const Field& b);  // a + s*b
Field apply(const Field& a, const std::function<double(double)>& f);

VectorField add(const VectorField& a, const VectorField& b);
VectorField sub(const VectorField& a, const VectorField& b);
VectorField scale(const VectorField& a, double s);
VectorField add_scaled(const VectorField& a, double s, const VectorField& b);
VectorField multiply(const Field& a, const VectorField& b);
VectorField multiply_dealias(const Field& a, const VectorField& b);

// grid quadrature: h^d * sum
double integral_nodal(const Field& f);
double inner(const Field& a, const Field& b);
double norm_l2(const Field& f);

}  // namespace relax
