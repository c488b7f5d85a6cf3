#include "doctest.h"

#include <cmath>
#include <complex>

#include "energetics.hpp"
#include "inequality.hpp"
#include "oracles.hpp"
#include "rng.hpp"

using namespace relax;

TEST_CASE("commutator: vanishing inputs and the b = 0 identity") {
  PeriodicGrid g(1, 64);
  Rng rng(3);
  Field u = oracle::random_band_field(g, 8, rng);
  Field gz = Field::zeros(g);
  CHECK(commutator_field(VectorField(std::vector<Field>{u}), gz, 0.25).max_abs() < 1e-14);
  CHECK(commutator_field(VectorField(std::vector<Field>{gz}), u, 0.25).max_abs() < 1e-14);

  // at b = 0: H = div(u g) - u . grad g = g div u exactly
  for (int trial = 0; trial < 10; ++trial) {
    Field uf = oracle::random_band_field(g, 10, rng);
    Field gf = oracle::random_band_field(g, 10, rng);
    VectorField uv(std::vector<Field>{uf});
    Field h0 = commutator_field(uv, gf, 0.0);
    Field want = commutator_b0(uv, gf);
    double err = 0.0;
    for (std::size_t j = 0; j < h0.nodal().size(); ++j)
      err = std::max(err, std::fabs(h0.nodal()[j] - want.nodal()[j]));
    CHECK(err < 1e-12);
  }

  Field with_mean = add_scaled(u, 1.0, Field::constant(g, 0.3));
  CHECK_THROWS_AS(commutator_field(VectorField(std::vector<Field>{u}), with_mean, 0.25),
                  validation_error);
}

TEST_CASE("commutator matches the direct double-sum convolution") {
  PeriodicGrid g(1, 64);
  Field u = Field::sample(g, [](double x) { return std::cos(x); });
  Field gf = Field::sample(g, [](double x) { return std::cos(2 * x); });
  const double b = 0.25;
  Field h = commutator_field(VectorField(std::vector<Field>{u}), gf, b);

  // oracle: H^(k) = sum_eta i (k|k|^-b - eta|eta|^-b) u^(k - eta) g^(eta), |k| <= 8
  auto coeff = [&](const Field& f, int k) {
    const int n = g.n();
    return f.spectral()[(k % n + n) % n];
  };
  auto sym = [&](double k) { return k == 0.0 ? 0.0 : k * std::pow(std::fabs(k), -b); };
  for (int k = -8; k <= 8; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int eta = -16; eta <= 16; ++eta) {
      const std::complex<double> term =
          std::complex<double>(0.0, sym(k) - sym(eta)) * coeff(u, k - eta) * coeff(gf, eta);
      acc += term;
    }
    CHECK(std::abs(coeff(h, k) - acc) < 1e-10);
  }
}

TEST_CASE("commutator ratio study: single-mode exactness across n and drift bound") {
  // single-mode inputs are resolution-independent: the ratio is identical at
  // every n (computed here through the raw field path rather than the study)
  double ratios[2];
  int idx = 0;
  for (int n : {64, 128}) {
    PeriodicGrid g(1, n);
    Field u = Field::sample(g, [](double x) { return std::cos(x); });
    Field gf = Field::sample(g, [](double x) { return std::sin(2 * x); });
    Field h = commutator_field(VectorField(std::vector<Field>{u}), gf, 0.25);
    ratios[idx++] = norm_l2(h) / (norm_hs(u, 2.0) *
                                  norm_l2(fractional_laplacian(gf, -0.25)));
  }
  CHECK(ratios[0] == doctest::Approx(ratios[1]).epsilon(1e-12));

  auto reports = commutator_ratio_study({64, 128}, 40, 0.25, 2.0, 777);
  REQUIRE(reports.size() == 2);
  for (const auto& r : reports) {
    CHECK(r.max_ratio > 0.0);
    // zero-mode bound via Cauchy-Schwarz holds with constant 1 under the
    // stated normalization (threshold 2 allows quadrature slack)
    CHECK(r.max_zero_mode_const <= 2.0);
  }
  const double drift = reports[1].max_ratio / reports[0].max_ratio;
  CHECK(drift < 2.0);
  CHECK(drift > 0.5);
}

TEST_CASE("hls probe: exponent validation, homogeneity, stability") {
  CHECK_THROWS_AS(hls_probe(0.5, 1, 2.0, 2.0, 4, 128, 16.0 * M_PI, 1), validation_error);

  const double p = 4.0 / 3.0, q = 4.0 / 3.0;  // 3/4 + 3/4 + 1/2 = 2
  HlsReport rep = hls_probe(0.5, 1, p, q, 24, 256, 16.0 * M_PI, 42);
  CHECK(rep.max_ratio > 0.0);

  // deterministic under the same seed
  HlsReport again = hls_probe(0.5, 1, p, q, 24, 256, 16.0 * M_PI, 42);
  CHECK(rep.max_ratio == doctest::Approx(again.max_ratio).epsilon(1e-15));

  // homogeneity of the ratio is exact by construction: scale-invariance of
  // |<f, Lambda g>| / (||f||_p ||g||_q) checked directly
  PeriodicGrid g(1, 256, 16.0 * M_PI);
  Field f = Field::sample(g, [](double x) { return std::exp(-0.5 * x * x); });
  Field h = Field::sample(g, [](double x) { return std::exp(-0.5 * (x - 1) * (x - 1)); });
  Field h0 = add_scaled(h, -1.0, Field::constant(g, h.mean()));
  const double r1 =
      std::fabs(inner(f, fractional_laplacian(h0, -0.5))) / (norm_lp(f, p) * norm_lp(h, q));
  Field f2 = scale(f, 3.7);
  Field h2 = scale(h, 0.21);
  Field h20 = add_scaled(h2, -1.0, Field::constant(g, h2.mean()));
  const double r2 = std::fabs(inner(f2, fractional_laplacian(h20, -0.5))) /
                    (norm_lp(f2, p) * norm_lp(h2, q));
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));

  // whole-space proxy: period doubling with the same physical data moves the
  // ratio by less than 1%
  HlsReport big = hls_probe(0.5, 1, p, q, 24, 512, 32.0 * M_PI, 42);
  CHECK(std::fabs(big.max_ratio - rep.max_ratio) / rep.max_ratio < 0.01);
}

TEST_CASE("extension energy: zero source and the fractional identity") {
  PeriodicGrid g(1, 128, 8.0 * M_PI);
  ExtensionProblem prob;
  prob.source = Field::zeros(g);
  prob.alpha = 0.5;
  CHECK(extension_energy(prob).energy == 0.0);

  // gaussian difference pair: energy reproduces the interaction form within 2%
  Field gsrc = Field::sample(g, [](double x) {
    return std::exp(-0.5 * (x - 1.0) * (x - 1.0) / 0.25) -
           std::exp(-0.5 * (x + 1.0) * (x + 1.0) / 0.25);
  });
  gsrc = add_scaled(gsrc, -1.0, Field::constant(g, gsrc.mean()));
  prob.source = gsrc;
  prob.height = 60.0;
  prob.levels = 160;
  ExtensionResult res = extension_energy_converged(prob);
  const double want = interaction_energy(gsrc, gsrc, 0.5, 1);
  CHECK(res.energy / want > 0.98);
  CHECK(res.energy / want < 1.02);
  CHECK(res.boundary_fraction < 1e-8);

  // refinement: doubling levels and height changes the result by < 0.5%
  ExtensionProblem fine = prob;
  fine.levels = 2 * prob.levels;
  fine.height = 2.0 * prob.height;
  ExtensionResult res2 = extension_energy(fine);
  ExtensionResult res1 = extension_energy(prob);
  CHECK(std::fabs(res2.energy - res1.energy) / res1.energy < 0.005);
}

TEST_CASE("extension rejects bad inputs") {
  PeriodicGrid g(1, 64);
  ExtensionProblem prob;
  prob.source = Field::constant(g, 1.0);  // not mean-zero
  CHECK_THROWS_AS(extension_energy(prob), validation_error);
  prob.source = Field::zeros(g);
  prob.levels = 4;
  CHECK_THROWS_AS(extension_energy(prob), validation_error);
}
