#include "energetics.hpp"

#include <cmath>

namespace relax {

namespace {

inline double u_of(double r, double gamma) {
  if (gamma == 1.0) return r > 0.0 ? r * std::log(r) : 0.0;
  return std::pow(r, gamma) / (gamma - 1.0);
}

inline double u_prime(double r, double gamma) {
  if (gamma == 1.0) return std::log(r) + 1.0;
  return gamma / (gamma - 1.0) * std::pow(r, gamma - 1.0);
}

}  // namespace

double internal_energy(const Field& rho, double gamma) {
  double s = 0.0;
  for (double r : rho.nodal()) s += u_of(r, gamma);
  return s * rho.grid().cell();
}

double interaction_energy(const Field& f, const Field& g, double alpha, int d) {
  const PeriodicGrid& grid = f.grid();
  if (grid != g.grid())
    throw validation_error("interaction_energy: fields live on different grids");
  if (grid.dim() != d) throw validation_error("interaction_energy: dimension mismatch");
  const double s = alpha - d;
  if (!(s > -2.0 && s < 0.0))
    throw validation_error("interaction_energy: alpha - d must lie in (-2, 0)");
  const double base = kTwoPi / grid.length();
  const int n = grid.n();
  double acc = 0.0;
  if (grid.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const int k = grid.freq(i);
      if (k == 0) continue;
      const double mult = std::pow(base * std::abs(k), s);
      acc += mult * (f.spectral()[i] * std::conj(g.spectral()[i])).real();
    }
  } else {
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1) {
        const int k0 = grid.freq(i0), k1 = grid.freq(i1);
        if (k0 == 0 && k1 == 0) continue;
        const std::size_t idx = static_cast<std::size_t>(i0) * n + i1;
        const double kk = base * std::sqrt(double(k0) * k0 + double(k1) * k1);
        acc += std::pow(kk, s) * (f.spectral()[idx] * std::conj(g.spectral()[idx])).real();
      }
  }
  return acc * grid.volume();
}

double free_energy(const Field& rho, const Params& p) {
  return p.c_p * internal_energy(rho, p.gamma) -
         0.5 * p.c_k * interaction_energy(rho, rho, p.alpha, p.d);
}

double kinetic_energy(const FluidState& s) {
  const double floor = density_floor(s.grid());
  double acc = 0.0;
  for (std::size_t j = 0; j < s.rho.nodal().size(); ++j) {
    double m2 = 0.0;
    for (const auto& mc : s.m.comp) m2 += mc.nodal()[j] * mc.nodal()[j];
    acc += m2 / (2.0 * std::max(s.rho.nodal()[j], floor));
  }
  return acc * s.grid().cell();
}

double modulated_kinetic(const FluidState& s, const VectorField& u_bar) {
  VectorField u = velocity(s);
  double acc = 0.0;
  for (std::size_t j = 0; j < s.rho.nodal().size(); ++j) {
    double d2 = 0.0;
    for (int c = 0; c < u.dim(); ++c) {
      const double du = u[c].nodal()[j] - u_bar[c].nodal()[j];
      d2 += du * du;
    }
    acc += 0.5 * s.rho.nodal()[j] * d2;
  }
  return acc * s.grid().cell();
}

double modulated_internal(const Field& rho, const Field& rho_bar, double gamma,
                          double c_p) {
  if (rho.grid() != rho_bar.grid())
    throw validation_error("modulated_internal: fields live on different grids");
  if (gamma == 1.0) {
    const double floor = density_floor(rho.grid());
    if (rho.min() < floor || rho_bar.min() < floor)
      throw validation_error("modulated_internal: density below floor for gamma = 1");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < rho.nodal().size(); ++j) {
    const double r = rho.nodal()[j];
    const double b = rho_bar.nodal()[j];
    acc += u_of(r, gamma) - u_of(b, gamma) - u_prime(b, gamma) * (r - b);
  }
  return c_p * acc * rho.grid().cell();
}

double modulated_interaction(const Field& rho, const Field& rho_bar, const Params& p) {
  Field diff = sub(rho, rho_bar);
  if (std::fabs(diff.integral()) > 1e-8)
    throw validation_error("modulated_interaction: densities carry different mass");
  return -0.5 * p.c_k * interaction_energy(diff, diff, p.alpha, p.d);
}

double norm_l1(const Field& f) {
  double s = 0.0;
  for (double v : f.nodal()) s += std::fabs(v);
  return s * f.grid().cell();
}

double norm_lp(const Field& f, double p) {
  if (!(p >= 1.0)) throw validation_error("norm_lp: p must be >= 1");
  double s = 0.0;
  for (double v : f.nodal()) s += std::pow(std::fabs(v), p);
  return std::pow(s * f.grid().cell(), 1.0 / p);
}

double norm_hs_homogeneous(const Field& f, double s) {
  if (s < 0.0 && std::fabs(f.mean()) > 1e-9 * (1.0 + f.max_abs()))
    throw validation_error("norm_hs: negative-order norm needs a mean-zero field");
  const PeriodicGrid& g = f.grid();
  const double base = kTwoPi / g.length();
  const int n = g.n();
  double acc = 0.0;
  if (g.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const int k = g.freq(i);
      if (k == 0) continue;
      acc += std::pow(base * std::abs(k), 2.0 * s) * std::norm(f.spectral()[i]);
    }
  } else {
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1) {
        const int k0 = g.freq(i0), k1 = g.freq(i1);
        if (k0 == 0 && k1 == 0) continue;
        const double kk = base * std::sqrt(double(k0) * k0 + double(k1) * k1);
        acc += std::pow(kk, 2.0 * s) *
               std::norm(f.spectral()[static_cast<std::size_t>(i0) * n + i1]);
      }
  }
  return std::sqrt(std::max(0.0, acc * g.volume()));
}

double norm_neg_sobolev(const Field& f, double alpha, int d) {
  return norm_hs_homogeneous(f, -(d - alpha) / 2.0);
}

double norm_hs(const Field& f, double s) {
  return norm_hs_homogeneous(f, s) + norm_l2(f);
}

namespace {

// exact integral of x^2 over each node's periodic cell on [-L/2, L/2);
// node 0 sits on the seam and owns the two boundary half-cells
std::vector<double> moment_weights(const PeriodicGrid& g) {
  const int n = g.n();
  const double h = g.spacing();
  auto cube = [](double x) { return x * x * x / 3.0; };
  std::vector<double> w(n);
  const double half_l = 0.5 * g.length();
  for (int i = 0; i < n; ++i) {
    const double x = g.node(i);
    if (i == 0)
      w[i] = (cube(-half_l + 0.5 * h) - cube(-half_l)) + (cube(half_l) - cube(half_l - 0.5 * h));
    else
      w[i] = cube(x + 0.5 * h) - cube(x - 0.5 * h);
  }
  return w;
}

}  // namespace

double second_moment(const Field& f) {
  const PeriodicGrid& g = f.grid();
  const std::vector<double> w = moment_weights(g);
  double acc = 0.0;
  if (g.dim() == 1) {
    for (int i = 0; i < g.n(); ++i) acc += w[i] * f.nodal()[i];
  } else {
    const double h = g.spacing();
    for (int i0 = 0; i0 < g.n(); ++i0)
      for (int i1 = 0; i1 < g.n(); ++i1)
        acc += (w[i0] * h + w[i1] * h) *
               f.nodal()[static_cast<std::size_t>(i0) * g.n() + i1];
  }
  return acc;
}

double modulated_internal_pointwise(double r, double b, double gamma) {
  return u_of(r, gamma) - u_of(b, gamma) - u_prime(b, gamma) * (r - b);
}

double modulated_internal_lower_pointwise(double r, double b, double gamma) {
  const double d = r - b;
  const double w = std::min(std::pow(r, gamma - 2.0), std::pow(b, gamma - 2.0));
  return 0.5 * gamma * w * d * d;
}

LgammaChainReport lgamma_chain_check(const Field& rho, const Field& rho_bar, double gamma) {
  if (!(gamma >= 1.0 && gamma <= 2.0))
    throw validation_error("lgamma_chain_check: gamma must lie in [1, 2]");
  LgammaChainReport rep;
  rep.gamma = gamma;
  const double cell = rho.grid().cell();

  double core = 0.0, modint = 0.0;
  for (std::size_t j = 0; j < rho.nodal().size(); ++j) {
    const double r = rho.nodal()[j], b = rho_bar.nodal()[j];
    core += modulated_internal_lower_pointwise(r, b, gamma);
    modint += modulated_internal_pointwise(r, b, gamma);
  }
  rep.weighted_core = core * cell;
  rep.mod_internal = modint * cell;
  const double lg = norm_lp(sub(rho, rho_bar), gamma);
  rep.lhs_sq = lg * lg;

  const double slack = 1e-12;
  if (gamma == 1.0) {
    // Cauchy-Schwarz split |diff| = max^(-1/2)|diff| * max^(1/2)
    double max_mass = 0.0;
    for (std::size_t j = 0; j < rho.nodal().size(); ++j)
      max_mass += std::max(rho.nodal()[j], rho_bar.nodal()[j]);
    max_mass *= cell;
    rep.mass_factor = max_mass;
    rep.constant = 2.0 * max_mass;
    const double holder_rhs = 2.0 * rep.weighted_core * max_mass;
    rep.holder_ok = rep.lhs_sq <= holder_rhs * (1.0 + 1e-9) + slack;
    rep.mass_ok = max_mass <= norm_l1(rho) + norm_l1(rho_bar) + slack;
  } else {
    // Hoelder with exponents 2/gamma and 2/(2-gamma)
    double max_pow = 0.0;
    for (std::size_t j = 0; j < rho.nodal().size(); ++j)
      max_pow += std::pow(std::max(rho.nodal()[j], rho_bar.nodal()[j]), gamma);
    max_pow *= cell;
    const double lhs_g = std::pow(lg, gamma);
    const double holder_rhs = std::pow(0.5 * gamma, -0.5 * gamma) *
                              std::pow(rep.weighted_core, 0.5 * gamma) *
                              std::pow(max_pow, 0.5 * (2.0 - gamma));
    rep.holder_ok = lhs_g <= holder_rhs * (1.0 + 1e-9) + slack;
    const double ng = norm_lp(rho, gamma), nb = norm_lp(rho_bar, gamma);
    const double mass_bound = std::pow(ng, gamma) + std::pow(nb, gamma);
    rep.mass_factor = mass_bound;
    rep.mass_ok = max_pow <= mass_bound * (1.0 + 1e-9) + slack;
    rep.constant = (2.0 / gamma) * std::pow(mass_bound, (2.0 - gamma) / gamma);
  }
  rep.core_ok = rep.weighted_core <= rep.mod_internal * (1.0 + 1e-9) + slack;
  rep.final_ok = rep.lhs_sq <= rep.constant * rep.mod_internal * (1.0 + 1e-9) + slack;
  return rep;
}

namespace {

EnergyReport base_report(const Field& rho, double time, const Params& p) {
  EnergyReport r;
  r.time = time;
  r.mass = rho.integral();
  r.internal = internal_energy(rho, p.gamma);
  r.interaction = interaction_energy(rho, rho, p.alpha, p.d);
  r.free = p.c_p * r.internal - 0.5 * p.c_k * r.interaction;
  r.theta_norm = norm_lp(rho, p.theta());
  r.second_moment = second_moment(rho);
  return r;
}

}  // namespace

EnergyReport energy_report(const FluidState& s, const Params& p) {
  EnergyReport r = base_report(s.rho, s.time, p);
  for (const auto& mc : s.m.comp) r.total_momentum.push_back(mc.integral());
  r.kinetic = kinetic_energy(s);
  r.total = r.kinetic + r.free / p.epsilon;
  r.dissipation_rate = 2.0 * modulated_kinetic(s, VectorField::zeros(s.grid())) / p.epsilon;
  return r;
}

EnergyReport energy_report(const LimitState& s, const Params& p) {
  EnergyReport r = base_report(s.rho, s.time, p);
  r.total_momentum.assign(s.grid().dim(), 0.0);
  r.total = r.free / p.epsilon;
  return r;
}

EnergyReport energy_report_pair(const FluidState& s, const LimitState& ref,
                                const VectorField& u_ref, const Params& p) {
  EnergyReport r = energy_report(s, p);
  Field diff = sub(s.rho, ref.rho);
  r.mod_kinetic = modulated_kinetic(s, u_ref);
  r.mod_internal = modulated_internal(s.rho, ref.rho, p.gamma, p.c_p);
  r.mod_interaction = modulated_interaction(s.rho, ref.rho, p);
  r.neg_sobolev_sq = interaction_energy(diff, diff, p.alpha, p.d);
  const double lg = norm_lp(diff, p.gamma == 1.0 ? 1.0 : p.gamma);
  r.lgamma_err_sq = lg * lg;
  VectorField m_ref = multiply_dealias(ref.rho, u_ref);
  double l1 = 0.0;
  for (int c = 0; c < s.m.dim(); ++c) l1 += norm_l1(sub(s.m[c], m_ref[c]));
  r.l1_momentum_err_sq = l1 * l1;
  return r;
}

}  // namespace relax
