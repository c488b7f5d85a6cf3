#include "studies.hpp"

#include <cmath>

#include "energetics.hpp"
#include "inequality.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "threadpool.hpp"

namespace relax {

namespace {

using json = nlohmann::ordered_json;

Field random_density_field(const PeriodicGrid& g, int band, double amp, Rng& rng) {
  std::vector<std::complex<double>> c(g.size(), {0.0, 0.0});
  const int n = g.n();
  for (int k = 1; k <= band; ++k) {
    const double a = rng.normal() * std::exp(-0.4 * k);
    const double ph = rng.uniform(0.0, kTwoPi);
    std::complex<double> v = 0.5 * a * std::complex<double>(std::cos(ph), std::sin(ph));
    c[k] = v;
    c[n - k] = std::conj(v);
  }
  Field wave = Field::from_spectral(g, std::move(c));
  const double s = wave.max_abs() > 0.0 ? amp / wave.max_abs() : 0.0;
  Field rho = add_scaled(Field::constant(g, 1.0), s, wave);
  return scale(rho, 1.0 / rho.integral());
}

StudyOutcome commutator_study(std::uint64_t seed) {
  StudyOutcome out;
  out.name = "commutator";
  const double b = 0.25, s = 2.0;
  auto reports = commutator_ratio_study({64, 128, 256}, 100, b, s, seed);

  bool pass = true;
  json ratios = json::array();
  double worst_drift = 1.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    ratios.push_back({{"n", reports[i].n},
                      {"max_ratio", reports[i].max_ratio},
                      {"zero_mode_constant", reports[i].max_zero_mode_const}});
    if (reports[i].max_zero_mode_const > 2.0) pass = false;
    if (i > 0) {
      const double drift = reports[i].max_ratio / reports[i - 1].max_ratio;
      worst_drift = std::max(worst_drift, std::max(drift, 1.0 / drift));
    }
  }
  if (worst_drift >= 2.0) pass = false;

  // the b = 0 algebraic identity on seeded band-limited fields
  PeriodicGrid g(1, 128);
  Rng rng(Rng::derive(seed, 999));
  double identity_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<std::complex<double>> cu(g.size(), {0.0, 0.0}), cg(g.size(), {0.0, 0.0});
    for (int k = 1; k <= 20; ++k) {
      auto mode = [&](std::vector<std::complex<double>>& c) {
        const double a = rng.normal() * std::exp(-0.2 * k);
        const double ph = rng.uniform(0.0, kTwoPi);
        std::complex<double> v = 0.5 * a * std::complex<double>(std::cos(ph), std::sin(ph));
        c[k] = v;
        c[g.n() - k] = std::conj(v);
      };
      mode(cu);
      mode(cg);
    }
    Field uf = Field::from_spectral(g, std::move(cu));
    Field gf = Field::from_spectral(g, std::move(cg));
    VectorField uv(std::vector<Field>{uf});
    Field h0 = commutator_field(uv, gf, 0.0);
    Field want = commutator_b0(uv, gf);
    for (std::size_t j = 0; j < h0.nodal().size(); ++j)
      identity_err = std::max(identity_err, std::fabs(h0.nodal()[j] - want.nodal()[j]));
  }
  if (identity_err > 1e-12) pass = false;

  out.pass = pass;
  out.report = {{"lemma", "commutator_bound"},
                {"parameters", {{"b", b}, {"s", s}, {"seed", seed}}},
                {"trials", 100},
                {"max_ratio", ratios},
                {"worst_drift", worst_drift},
                {"b0_identity_error", identity_err},
                {"pass", pass}};
  return out;
}

StudyOutcome hls_study(std::uint64_t seed) {
  StudyOutcome out;
  out.name = "hls";
  const double alpha = 0.5, p = 4.0 / 3.0, q = 4.0 / 3.0;
  HlsReport base = hls_probe(alpha, 1, p, q, 40, 256, 16.0 * kTwoPi / 2.0, seed);
  HlsReport refined = hls_probe(alpha, 1, p, q, 40, 512, 32.0 * kTwoPi / 2.0, seed);
  const double drift = std::fabs(refined.max_ratio - base.max_ratio) / base.max_ratio;
  const bool pass = drift < 0.01 && base.max_ratio > 0.0;
  out.pass = pass;
  out.report = {{"lemma", "hls_bilinear_bound"},
                {"parameters",
                 {{"alpha", alpha}, {"p", p}, {"q", q}, {"seed", seed}}},
                {"trials", base.trials},
                {"max_ratio", base.max_ratio},
                {"max_ratio_refined", refined.max_ratio},
                {"relative_drift", drift},
                {"pass", pass}};
  return out;
}

StudyOutcome extension_study(std::uint64_t seed) {
  StudyOutcome out;
  out.name = "extension";
  PeriodicGrid g(1, 128, 4.0 * kTwoPi);
  json cases = json::array();
  bool pass = true;
  double norm_const = 0.0;
  Rng rng(seed);
  for (int c = 0; c < 3; ++c) {
    const double sep = 0.6 + 0.4 * c;
    const double width = 0.35 + 0.05 * rng.uniform();
    Field src = Field::sample(g, [&](double x) {
      return std::exp(-0.5 * (x - sep) * (x - sep) / (width * width)) -
             std::exp(-0.5 * (x + sep) * (x + sep) / (width * width));
    });
    src = add_scaled(src, -1.0, Field::constant(g, src.mean()));
    ExtensionProblem prob;
    prob.source = src;
    prob.alpha = 0.5;
    prob.height = 60.0;
    prob.levels = 160;
    ExtensionResult res = extension_energy_converged(prob);
    norm_const = res.normalization;
    const double want = interaction_energy(src, src, 0.5, 1);
    const double ratio = res.energy / want;
    if (!(ratio > 0.98 && ratio < 1.02)) pass = false;
    cases.push_back({{"separation", sep},
                     {"width", width},
                     {"energy_ratio", ratio},
                     {"boundary_fraction", res.boundary_fraction}});
  }
  out.pass = pass;
  out.report = {{"lemma", "extension_identity"},
                {"parameters",
                 {{"alpha", 0.5}, {"height", 60.0}, {"levels", 160}, {"seed", seed}}},
                {"trials", 3},
                {"normalization_constant", norm_const},
                {"energy_ratio", cases},
                {"pass", pass}};
  return out;
}

StudyOutcome lower_bounds_study(std::uint64_t seed, int threads) {
  StudyOutcome out;
  out.name = "lower_bounds";
  // pointwise convexity bound over 1e5 random positive pairs per gamma
  const std::vector<double> gammas = {1.0, 1.5, 2.0, 3.0};
  std::vector<int> violations(gammas.size(), 0);
  parallel_for(static_cast<int>(gammas.size()), threads, [&](int gi) {
    Rng rng(Rng::derive(seed, gi));
    const double gamma = gammas[gi];
    for (int i = 0; i < 100000; ++i) {
      const double r = std::exp(rng.uniform(-3.0, 2.0));
      const double b = std::exp(rng.uniform(-3.0, 2.0));
      const double lhs = modulated_internal_pointwise(r, b, gamma);
      const double rhs = modulated_internal_lower_pointwise(r, b, gamma);
      if (lhs < rhs - 1e-12 * std::max(1.0, std::fabs(rhs))) ++violations[gi];
    }
  });
  int total_violations = 0;
  for (int v : violations) total_violations += v;

  // stepwise interpolation chain on 1e3 random density pairs
  PeriodicGrid g(1, 64);
  Rng rng(Rng::derive(seed, 77));
  int chain_failures = 0;
  for (double gamma : {1.0, 1.4, 2.0}) {
    for (int t = 0; t < 334; ++t) {
      Field a = random_density_field(g, 6, 0.6, rng);
      Field b = random_density_field(g, 6, 0.6, rng);
      if (!lgamma_chain_check(a, b, gamma).ok()) ++chain_failures;
    }
  }
  const bool pass = total_violations == 0 && chain_failures == 0;
  out.pass = pass;
  out.report = {{"lemma", "internal_energy_lower_bounds"},
                {"parameters", {{"gammas", gammas}, {"seed", seed}}},
                {"trials", 100000 * static_cast<int>(gammas.size()) + 1002},
                {"pointwise_violations", total_violations},
                {"chain_failures", chain_failures},
                {"pass", pass}};
  return out;
}

StudyOutcome metric_sanity_study(std::uint64_t seed) {
  StudyOutcome out;
  out.name = "metric_sanity";
  PeriodicGrid g(1, 64);
  Rng rng(seed);
  int order_violations = 0;
  int certificate_violations = 0;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Field ra = random_density_field(g, 6, 0.7, rng);
    Field rb = random_density_field(g, 6, 0.7, rng);
    GridMeasure a = GridMeasure::from_density(ra, Geometry::torus);
    GridMeasure b = GridMeasure::from_density(rb, Geometry::torus);
    auto bl = bounded_lipschitz(a, b);
    const double d2 = wasserstein2_torus_1d(a, b);
    if (bl.value > d2 + 1e-9) ++order_violations;
    worst_gap = std::max(worst_gap, bl.gap);
    // certificate feasibility
    const double h = g.spacing();
    for (std::size_t i = 0; i < bl.phi.size(); ++i) {
      if (std::fabs(bl.phi[i]) > 1.0 + 1e-10) ++certificate_violations;
      const std::size_t j = (i + 1) % bl.phi.size();
      if (std::fabs(bl.phi[j] - bl.phi[i]) > h + 1e-10) ++certificate_violations;
    }
  }
  const bool pass = order_violations == 0 && certificate_violations == 0;
  out.pass = pass;
  out.report = {{"lemma", "metric_ordering"},
                {"parameters", {{"n", 64}, {"seed", seed}}},
                {"trials", 100},
                {"order_violations", order_violations},
                {"certificate_violations", certificate_violations},
                {"worst_gap", worst_gap},
                {"pass", pass}};
  return out;
}

}  // namespace

StudyOutcome run_study(const std::string& name, std::uint64_t seed, int threads) {
  if (name == "commutator") return commutator_study(seed);
  if (name == "hls") return hls_study(seed);
  if (name == "extension") return extension_study(seed);
  if (name == "lower_bounds") return lower_bounds_study(seed, threads);
  if (name == "metric_sanity") return metric_sanity_study(seed);
  throw validation_error("verify: unknown study '" + name + "'");
}

}  // namespace relax
