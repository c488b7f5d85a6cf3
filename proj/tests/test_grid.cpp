#include "doctest.h"

#include <cmath>
#include <complex>

#include "grid.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace relax;

namespace {
double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}
}  // namespace

TEST_CASE("grid construction invariants") {
  PeriodicGrid g(1, 32);
  CHECK(g.size() == 32);
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 32).epsilon(1e-15));
  CHECK(g.node(0) == doctest::Approx(-kTwoPi / 2).epsilon(1e-15));
  // exactly one zero mode
  int zeros = 0;
  for (int i = 0; i < g.n(); ++i)
    if (g.freq(i) == 0) ++zeros;
  CHECK(zeros == 1);

  PeriodicGrid g2(2, 16, 4.0);
  CHECK(g2.size() == 256);
  CHECK(g2.volume() == doctest::Approx(16.0));

  CHECK_THROWS_AS(PeriodicGrid(3, 32), validation_error);
  CHECK_THROWS_AS(PeriodicGrid(1, 31), validation_error);
  CHECK_THROWS_AS(PeriodicGrid(1, 8), validation_error);
}

TEST_CASE("forward transform: constant and single mode") {
  PeriodicGrid g(1, 32);
  Field one = Field::constant(g, 1.0);
  CHECK(std::abs(one.spectral()[0] - 1.0) < 1e-14);
  for (int i = 1; i < g.n(); ++i) CHECK(std::abs(one.spectral()[i]) < 1e-14);

  Field c = Field::sample(g, [](double x) { return std::cos(x); });
  CHECK(std::abs(c.spectral()[1] - 0.5) < 1e-14);
  CHECK(std::abs(c.spectral()[g.n() - 1] - 0.5) < 1e-14);
  for (int i = 0; i < g.n(); ++i) {
    if (i == 1 || i == g.n() - 1) continue;
    CHECK(std::abs(c.spectral()[i]) < 1e-13);
  }
}

TEST_CASE("transform matches direct summation and round-trips") {
  for (int n : {16, 32}) {
    PeriodicGrid g(1, n);
    Rng rng(2024 + n);
    std::vector<double> v(g.size());
    for (auto& x : v) x = rng.normal();
    Field f = Field::from_nodal(g, v);
    auto slow = oracle::slow_dft_1d(g, v);
    for (int i = 0; i < n; ++i) CHECK(std::abs(f.spectral()[i] - slow[i]) < 1e-12);
    Field back = Field::from_spectral(g, f.spectral());
    for (int i = 0; i < n; ++i) CHECK(rel_err(back.nodal()[i], v[i]) < 1e-12);
  }
}

TEST_CASE("integral and mean agree with the zero mode") {
  PeriodicGrid g(1, 64, 10.0);
  Rng rng(7);
  Field f = oracle::random_band_field(g, 8, rng);
  Field shifted = add_scaled(f, 0.3, Field::constant(g, 1.0));
  CHECK(shifted.mean() == doctest::Approx(shifted.spectral()[0].real()).epsilon(1e-13));
  CHECK(shifted.integral() ==
        doctest::Approx(integral_nodal(shifted)).epsilon(1e-12));
}

TEST_CASE("Parseval holds for random fields") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 2 == 0 ? 32 : 64;
    PeriodicGrid g(1, n, trial % 3 == 0 ? 5.0 : kTwoPi);
    std::vector<double> v(g.size());
    for (auto& x : v) x = rng.normal();
    Field f = Field::from_nodal(g, v);
    double nodal_sq = 0.0;
    for (double x : v) nodal_sq += x * x;
    nodal_sq *= g.cell();
    double spec_sq = 0.0;
    for (const auto& c : f.spectral()) spec_sq += std::norm(c);
    spec_sq *= g.volume();
    CHECK(rel_err(nodal_sq, spec_sq) < 1e-12);
  }
}

TEST_CASE("spectral gradient: analytic cases") {
  PeriodicGrid g(1, 64);
  Field c = Field::sample(g, [](double x) { return std::cos(x); });
  Field dc = derivative(c, 0);
  for (int i = 0; i < g.n(); ++i)
    CHECK(dc.nodal()[i] == doctest::Approx(-std::sin(g.node(i))).epsilon(1e-12));

  Field k = Field::constant(g, 3.7);
  CHECK(derivative(k, 0).max_abs() < 1e-14);
}

TEST_CASE("spectral gradient matches 4th-order finite differences in 2-d") {
  PeriodicGrid g(2, 64);
  Field f = Field::sample2(g, [](double x, double y) { return std::cos(3 * x) * std::cos(2 * y); });
  for (int axis : {0, 1}) {
    Field df = derivative(f, axis);
    auto fd = oracle::fd4_derivative(g, f.nodal(), axis);
    double err = 0.0;
    for (std::size_t j = 0; j < fd.size(); ++j)
      err = std::max(err, std::fabs(df.nodal()[j] - fd[j]));
    // the FD oracle carries its own O(h^4) error (~h^4 k^5 / 30); spectral is exact here
    CHECK(err < 1e-3);
    CHECK(err > 0.0);
  }
  Field dx = derivative(f, 0);
  double err = 0.0;
  for (int i0 = 0; i0 < g.n(); ++i0)
    for (int i1 = 0; i1 < g.n(); ++i1) {
      double want = -3.0 * std::sin(3 * g.node(i0)) * std::cos(2 * g.node(i1));
      err = std::max(err, std::fabs(dx.nodal()[static_cast<std::size_t>(i0) * g.n() + i1] - want));
    }
  CHECK(err < 1e-10);
}

TEST_CASE("fractional laplacian eigenfunctions and conventions") {
  PeriodicGrid g(1, 64);
  Field c1 = Field::sample(g, [](double x) { return std::cos(x); });
  Field r1 = fractional_laplacian(c1, -0.5);
  for (int i = 0; i < g.n(); ++i)
    CHECK(r1.nodal()[i] == doctest::Approx(c1.nodal()[i]).epsilon(1e-12));

  Field c2 = Field::sample(g, [](double x) { return std::cos(2 * x); });
  Field r2 = fractional_laplacian(c2, -0.5);
  const double mult = std::pow(2.0, -0.5);
  for (int i = 0; i < g.n(); ++i)
    CHECK(r2.nodal()[i] == doctest::Approx(mult * c2.nodal()[i]).epsilon(1e-12));

  // zero-mode convention
  Field one = Field::constant(g, 1.0);
  CHECK(fractional_laplacian(one, -0.5).max_abs() < 1e-14);

  CHECK_THROWS_AS(fractional_laplacian(c1, 2.0), validation_error);
  CHECK_THROWS_AS(fractional_laplacian(c1, -2.0), validation_error);
}

TEST_CASE("fractional laplacian multiplier matches the periodized kernel integral") {
  // Direct numeric Fourier integral of the standard-normalization kernel
  // c/|x|^alpha; by Poisson summation this is the mean-zero periodized-kernel
  // multiplier at integer frequencies. Normalization constant used:
  // c_{alpha,1} = Gamma(alpha/2) / (sqrt(pi) 2^(1-alpha) Gamma((1-alpha)/2)).
  const double alpha = 0.5;
  for (double k : {1.0, 2.0, 3.0}) {
    const double want = std::pow(k, alpha - 1.0);
    const double got = oracle::riesz_multiplier_integral_1d(alpha, k);
    CHECK(rel_err(got, want) < 1e-6);
  }
  PeriodicGrid g(1, 256);
  Field c2 = Field::sample(g, [](double x) { return std::cos(2 * x); });
  Field r2 = fractional_laplacian(c2, alpha - 1.0);
  const double mult = oracle::riesz_multiplier_integral_1d(alpha, 2.0);
  for (int i = 0; i < g.n(); i += 17)
    CHECK(r2.nodal()[i] == doctest::Approx(mult * c2.nodal()[i]).epsilon(1e-6));
}

TEST_CASE("fractional laplacian composition law and self-adjointness") {
  PeriodicGrid g(1, 64);
  Rng rng(42);
  for (double s : {0.25, 0.75, -0.25, -0.75}) {
    Field f = oracle::random_band_field(g, 12, rng);
    Field round = fractional_laplacian(fractional_laplacian(f, s), -s);
    Field want = add_scaled(f, -1.0, Field::constant(g, f.mean()));
    double err = 0.0;
    for (std::size_t j = 0; j < round.nodal().size(); ++j)
      err = std::max(err, std::fabs(round.nodal()[j] - want.nodal()[j]));
    CHECK(err < 1e-10);
  }
  for (int trial = 0; trial < 20; ++trial) {
    Field f = oracle::random_band_field(g, 10, rng);
    Field h = oracle::random_band_field(g, 10, rng);
    double lhs = inner(fractional_laplacian(f, -0.5), h);
    double rhs = inner(f, fractional_laplacian(h, -0.5));
    CHECK(rel_err(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("riesz force: eigenfunction, constant, composition") {
  PeriodicGrid g(1, 64);
  Field rho = Field::sample(g, [](double x) { return (1.0 + 0.5 * std::cos(x)) / kTwoPi; });
  VectorField f = riesz_force(rho, 0.5);
  for (int i = 0; i < g.n(); ++i)
    CHECK(f[0].nodal()[i] == doctest::Approx(-0.5 * std::sin(g.node(i)) / kTwoPi).epsilon(1e-12));

  CHECK(riesz_force(Field::constant(g, 1.0 / kTwoPi), 0.5).max_abs() < 1e-15);

  Rng rng(5);
  Field two = oracle::random_band_field(g, 2, rng);
  VectorField got = riesz_force(two, 0.5);
  VectorField want = gradient(fractional_laplacian(two, 0.5 - 1.0));
  for (int i = 0; i < g.n(); ++i)
    CHECK(got[0].nodal()[i] == doctest::Approx(want[0].nodal()[i]).epsilon(1e-12));

  // zero mean per component, exactly in spectral space
  CHECK(std::abs(got[0].spectral()[0]) == 0.0);

  CHECK_THROWS_AS(riesz_force(two, 1.0), validation_error);
}

TEST_CASE("dealias: band edges and exact products") {
  PeriodicGrid g(1, 32);
  Field low = Field::sample(g, [](double x) { return std::cos(x); });
  Field same = dealias(low);
  for (int i = 0; i < g.n(); ++i)
    CHECK(same.nodal()[i] == doctest::Approx(low.nodal()[i]).epsilon(1e-13));

  Field high = Field::sample(g, [](double x) { return std::cos(15.0 * x); });
  CHECK(dealias(high).max_abs() < 1e-13);

  // product of two band-limited fields is exact when the combined band fits
  Field a = Field::sample(g, [](double x) { return std::cos(2 * x); });
  Field b = Field::sample(g, [](double x) { return std::sin(3 * x); });
  Field prod = multiply_dealias(a, b);
  // cos(2x) sin(3x) = (sin(5x) + sin(x)) / 2
  for (int i = 0; i < g.n(); ++i) {
    double want = 0.5 * (std::sin(5 * g.node(i)) + std::sin(g.node(i)));
    CHECK(prod.nodal()[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("nyquist mode of odd derivatives is zeroed") {
  PeriodicGrid g(1, 32);
  std::vector<std::complex<double>> c(g.size(), 0.0);
  c[g.n() / 2] = 1.0;  // pure Nyquist content
  Field f = Field::from_spectral(g, c);
  CHECK(derivative(f, 0).max_abs() < 1e-14);
}
