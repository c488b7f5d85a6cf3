#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "energetics.hpp"

namespace relax {

GridMeasure GridMeasure::from_density(const Field& rho, Geometry geom) {
  GridMeasure m;
  m.grid = rho.grid();
  m.geometry = geom;
  m.masses.resize(rho.grid().size());
  const double cell = rho.grid().cell();
  for (std::size_t j = 0; j < m.masses.size(); ++j) m.masses[j] = rho.nodal()[j] * cell;
  return m;
}

double GridMeasure::total() const {
  double s = 0.0;
  for (double v : masses) s += v;
  return s;
}

GridMeasure GridMeasure::as_probability() const {
  GridMeasure out = *this;
  for (double& v : out.masses) {
    if (v < -1e-14) throw validation_error("measure: negative mass beyond clip tolerance");
    if (v < 0.0) v = 0.0;
  }
  const double tot = out.total();
  if (std::fabs(tot - 1.0) > 1e-10)
    throw validation_error("measure: total mass differs from 1 beyond tolerance");
  for (double& v : out.masses) v /= tot;
  return out;
}

namespace {

struct Atom {
  double x;
  double mass;
};

std::vector<Atom> atoms_1d(const GridMeasure& m) {
  std::vector<Atom> a;
  a.reserve(m.masses.size());
  for (int i = 0; i < m.grid.n(); ++i)
    if (m.masses[i] > 0.0) a.push_back({m.grid.node(i), m.masses[i]});
  return a;
}

// sub-threshold slivers are rounding debris from cumulative sums; they are
// skipped without transport (true atom masses sit far above this scale)
constexpr double kSliver = 1e-12;

// quantile-coupling cost on the line between sorted atom lists
double quantile_cost(const std::vector<Atom>& mu, const std::vector<Atom>& nu) {
  double cost = 0.0;
  std::size_t i = 0, j = 0;
  double ri = mu.empty() ? 0.0 : mu[0].mass;
  double rj = nu.empty() ? 0.0 : nu[0].mass;
  while (i < mu.size() && j < nu.size()) {
    if (ri <= kSliver) {
      ++i;
      ri = i < mu.size() ? mu[i].mass : 0.0;
      continue;
    }
    if (rj <= kSliver) {
      ++j;
      rj = j < nu.size() ? nu[j].mass : 0.0;
      continue;
    }
    const double take = std::min(ri, rj);
    const double d = mu[i].x - nu[j].x;
    cost += take * d * d;
    ri -= take;
    rj -= take;
  }
  return cost;
}

}  // namespace

double wasserstein2_1d(const GridMeasure& mu_raw, const GridMeasure& nu_raw) {
  if (mu_raw.grid.dim() != 1 || nu_raw.grid.dim() != 1)
    throw validation_error("wasserstein2_1d: needs 1-d measures");
  if (mu_raw.geometry != Geometry::line_segment || nu_raw.geometry != Geometry::line_segment)
    throw validation_error("wasserstein2_1d: needs line-segment geometry");
  GridMeasure mu = mu_raw.as_probability();
  GridMeasure nu = nu_raw.as_probability();
  return std::sqrt(std::max(0.0, quantile_cost(atoms_1d(mu), atoms_1d(nu))));
}

namespace {

// circular quantile cost at mass offset theta; nu's quantile ladder is
// unrolled onto the covering line with positions shifted by multiples of L
double circular_cost(const std::vector<Atom>& mu, const std::vector<Atom>& nu, double L,
                     double theta) {
  struct Step {
    double cum_hi;
    double x;
  };
  std::vector<Step> ladder;
  ladder.reserve(3 * nu.size());
  for (int copy = -1; copy <= 1; ++copy) {
    double cum = copy;
    for (const auto& a : nu) {
      cum += a.mass;
      ladder.push_back({cum, a.x + copy * L});
    }
  }
  double cost = 0.0;
  std::size_t i = 0;
  double remaining = mu.empty() ? 0.0 : mu[0].mass;
  std::size_t j = 0;
  while (j < ladder.size() && ladder[j].cum_hi <= -theta + kSliver) ++j;
  if (j >= ladder.size()) return cost;
  // decrement per-step room so min() always zeroes one side exactly
  double room = ladder[j].cum_hi - (-theta);
  while (i < mu.size() && j < ladder.size()) {
    if (remaining <= kSliver) {
      ++i;
      remaining = i < mu.size() ? mu[i].mass : 0.0;
      continue;
    }
    if (room <= kSliver) {
      ++j;
      room = j < ladder.size() ? ladder[j].cum_hi - ladder[j - 1].cum_hi : 0.0;
      continue;
    }
    const double take = std::min(remaining, room);
    const double d = mu[i].x - ladder[j].x;
    cost += take * d * d;
    remaining -= take;
    room -= take;
  }
  return cost;
}

}  // namespace

double wasserstein2_torus_1d(const GridMeasure& mu_raw, const GridMeasure& nu_raw) {
  if (mu_raw.grid.dim() != 1) throw validation_error("wasserstein2_torus_1d: needs d = 1");
  if (mu_raw.geometry != Geometry::torus || nu_raw.geometry != Geometry::torus)
    throw validation_error("wasserstein2_torus_1d: needs torus geometry");
  GridMeasure mu = mu_raw.as_probability();
  GridMeasure nu = nu_raw.as_probability();
  auto amu = atoms_1d(mu);
  auto anu = atoms_1d(nu);
  const double L = mu.grid.length();
  auto cost = [&](double theta) { return circular_cost(amu, anu, L, theta); };

  // golden-section over the transshipment offset; the cost is convex and
  // piecewise linear in theta
  const double invphi = 0.6180339887498949;
  double a = -1.0, b = 1.0;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = cost(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = cost(x2);
    }
  }
  // the minimizer sits at a kink theta = (mu cumsum) - (nu cumsum) + integer;
  // finish exactly by enumerating the kinks inside the bracket
  double best = std::min(f1, f2);
  std::vector<double> pcum(amu.size()), ccum(anu.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amu.size(); ++i) pcum[i] = (acc += amu[i].mass);
  acc = 0.0;
  for (std::size_t j = 0; j < anu.size(); ++j) ccum[j] = (acc += anu[j].mass);
  const double pad = 1e-12;
  for (double p : pcum)
    for (double c : ccum)
      for (int k = -1; k <= 1; ++k) {
        const double theta = p - c + k;
        if (theta >= a - pad && theta <= b + pad)
          best = std::min(best, cost(std::clamp(theta, -1.0, 1.0)));
      }
  best = std::min({best, cost(a), cost(b)});
  return std::sqrt(std::max(0.0, best));
}

double wasserstein2(const Field& rho_a, const Field& rho_b, Geometry geom) {
  if (rho_a.grid() != rho_b.grid())
    throw validation_error("wasserstein2: fields live on different grids");
  GridMeasure a = GridMeasure::from_density(rho_a, geom);
  GridMeasure b = GridMeasure::from_density(rho_b, geom);
  if (rho_a.grid().dim() == 1)
    return geom == Geometry::torus ? wasserstein2_torus_1d(a, b) : wasserstein2_1d(a, b);
  EntropicResult r = wasserstein2_entropic(a, b, 1e-2 * rho_a.grid().length());
  return r.value;
}

// ---------------------------------------------------------------------------
// entropic solver (separable kernel, log-domain)
// ---------------------------------------------------------------------------

namespace {

double axis_distance(double a, double b, double L, Geometry geom) {
  double d = a - b;
  if (geom == Geometry::torus) {
    d = std::fmod(d, L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
  }
  return d;
}

double lse(const double* v, int count) {
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) m = std::max(m, v[i]);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (int i = 0; i < count; ++i) s += std::exp(v[i] - m);
  return m + std::log(s);
}

struct SinkhornOut {
  double plan_cost = 0.0;
  double violation = 0.0;
  int iters = 0;
  std::vector<double> f, g;
};

// log-domain Sinkhorn with a cost separable across axes: C = cx (+ cy)
SinkhornOut sinkhorn(const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<double>& cx, const std::vector<double>& cy, int n1,
                     int n2, double reg) {
  const std::size_t N = static_cast<std::size_t>(n1) * n2;
  auto logw = [&](const std::vector<double>& w) {
    std::vector<double> lw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      lw[i] = w[i] > 0.0 ? std::log(w[i]) : -745.0;  // effectively zero mass
    return lw;
  };
  std::vector<double> la = logw(a), lb = logw(b);
  std::vector<double> f(N, 0.0), g(N, 0.0);
  std::vector<double> buf(std::max(n1, n2));
  std::vector<double> T(static_cast<std::size_t>(n1) * std::max(n2, 1));

  // soft row sums: out[i] = lse_j((src[j] - C_ij)/reg), via the axis split
  auto soft = [&](const std::vector<double>& src, std::vector<double>& out) {
    if (n2 == 1) {
      for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n1; ++j)
          buf[j] = (src[j] - cx[static_cast<std::size_t>(i) * n1 + j]) / reg;
        out[i] = lse(buf.data(), n1);
      }
      return;
    }
    for (int j1 = 0; j1 < n1; ++j1)
      for (int i2 = 0; i2 < n2; ++i2) {
        for (int j2 = 0; j2 < n2; ++j2)
          buf[j2] = (src[static_cast<std::size_t>(j1) * n2 + j2] -
                     cy[static_cast<std::size_t>(i2) * n2 + j2]) /
                    reg;
        T[static_cast<std::size_t>(j1) * n2 + i2] = lse(buf.data(), n2);
      }
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2) {
        for (int j1 = 0; j1 < n1; ++j1)
          buf[j1] = T[static_cast<std::size_t>(j1) * n2 + i2] -
                    cx[static_cast<std::size_t>(i1) * n1 + j1] / reg;
        out[static_cast<std::size_t>(i1) * n2 + i2] = lse(buf.data(), n1);
      }
  };

  SinkhornOut out;
  std::vector<double> soft_sum(N);
  const int cap = 20000;
  for (int it = 1; it <= cap; ++it) {
    soft(g, soft_sum);
    for (std::size_t i = 0; i < N; ++i) f[i] = reg * (la[i] - soft_sum[i]);
    soft(f, soft_sum);
    for (std::size_t j = 0; j < N; ++j) g[j] = reg * (lb[j] - soft_sum[j]);
    out.iters = it;
    if (it % 10 == 0 || it == cap) {
      soft(g, soft_sum);
      double viol = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        viol = std::max(viol, std::fabs(std::exp(f[i] / reg + soft_sum[i]) - a[i]));
      out.violation = viol;
      if (viol < 1e-9) break;
    }
  }

  // transport cost of the (near-feasible) plan
  double cost = 0.0;
  if (n2 == 1) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) {
        const double c = cx[static_cast<std::size_t>(i) * n1 + j];
        cost += std::exp((f[i] + g[j] - c) / reg) * c;
      }
  } else {
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2) {
        const double fi = f[static_cast<std::size_t>(i1) * n2 + i2];
        for (int j1 = 0; j1 < n1; ++j1) {
          const double cxv = cx[static_cast<std::size_t>(i1) * n1 + j1];
          for (int j2 = 0; j2 < n2; ++j2) {
            const double cyv = cy[static_cast<std::size_t>(i2) * n2 + j2];
            cost += std::exp((fi + g[static_cast<std::size_t>(j1) * n2 + j2] - cxv - cyv) /
                             reg) *
                    (cxv + cyv);
          }
        }
      }
  }
  out.plan_cost = cost;
  out.f = std::move(f);
  out.g = std::move(g);
  return out;
}

}  // namespace

EntropicResult wasserstein2_entropic(const GridMeasure& mu_raw, const GridMeasure& nu_raw,
                                     double reg) {
  if (!(reg > 0.0)) throw validation_error("wasserstein2_entropic: reg must be positive");
  if (mu_raw.grid != nu_raw.grid)
    throw validation_error("wasserstein2_entropic: measures live on different grids");
  if (mu_raw.grid.size() > 64 * 64)
    throw validation_error("wasserstein2_entropic: node count capped at 64^2");
  GridMeasure mu = mu_raw.as_probability();
  GridMeasure nu = nu_raw.as_probability();

  const PeriodicGrid& g = mu.grid;
  const int n1 = g.n();
  const int n2 = g.dim() == 2 ? g.n() : 1;
  const std::size_t N = static_cast<std::size_t>(n1) * n2;

  std::vector<double> cx(static_cast<std::size_t>(n1) * n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      const double d = axis_distance(g.node(i), g.node(j), g.length(), mu.geometry);
      cx[static_cast<std::size_t>(i) * n1 + j] = d * d;
    }
  std::vector<double> cy = n2 > 1 ? cx : std::vector<double>();

  SinkhornOut ab = sinkhorn(mu.masses, nu.masses, cx, cy, n1, n2, reg);
  SinkhornOut aa = sinkhorn(mu.masses, mu.masses, cx, cy, n1, n2, reg);
  SinkhornOut bb = sinkhorn(nu.masses, nu.masses, cx, cy, n1, n2, reg);
  if (ab.violation > 1e-6 || aa.violation > 1e-6 || bb.violation > 1e-6) {
    std::ostringstream os;
    os << "wasserstein2_entropic: marginal violation " << ab.violation
       << " after the iteration cap";
    throw numerical_error(os.str());
  }

  EntropicResult res;
  res.reg = reg;
  res.iterations = ab.iters;
  res.marginal_violation = ab.violation;
  res.cost = ab.plan_cost - 0.5 * (aa.plan_cost + bb.plan_cost);
  res.value = std::sqrt(std::max(0.0, res.cost));

  // bracket for the raw mu-nu cost: the plan is feasible up to the marginal
  // violation; the duals become feasible after subtracting their worst excess
  double cmax = 0.0;
  for (double c : cx) cmax = std::max(cmax, c);
  if (n2 > 1) cmax *= 2.0;
  res.upper = ab.plan_cost + 2.0 * ab.violation * static_cast<double>(N) * cmax;
  double dual_value = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    dual_value += ab.f[i] * mu.masses[i] + ab.g[i] * nu.masses[i];
  double worst = 0.0;
  if (n2 == 1) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j)
        worst =
            std::max(worst, ab.f[i] + ab.g[j] - cx[static_cast<std::size_t>(i) * n1 + j]);
  } else {
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2)
        for (int j1 = 0; j1 < n1; ++j1)
          for (int j2 = 0; j2 < n2; ++j2)
            worst = std::max(worst, ab.f[static_cast<std::size_t>(i1) * n2 + i2] +
                                        ab.g[static_cast<std::size_t>(j1) * n2 + j2] -
                                        cx[static_cast<std::size_t>(i1) * n1 + j1] -
                                        cy[static_cast<std::size_t>(i2) * n2 + j2]);
  }
  res.lower = dual_value - std::max(0.0, worst);
  res.bias_bound = (res.upper - res.lower) + 0.5 * (aa.plan_cost + bb.plan_cost);
  return res;
}

// ---------------------------------------------------------------------------
// bounded-Lipschitz distance
// ---------------------------------------------------------------------------

namespace {

// concave piecewise-linear function on [lo, hi]
struct ConcavePl {
  std::vector<double> xs, vs;

  static ConcavePl linear(double lo, double hi, double slope) {
    return {{lo, hi}, {slope * lo, slope * hi}};
  }
  static ConcavePl point(double x, double v) { return {{x}, {v}}; }

  void add_linear(double w) {
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] += w * xs[i];
  }

  double eval(double x) const {
    if (xs.size() == 1) return vs[0];
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - xs.begin(), 1, static_cast<std::ptrdiff_t>(xs.size()) - 1));
    const std::size_t lo = hi - 1;
    const double dx = xs[hi] - xs[lo];
    if (dx <= 0.0) return vs[lo];
    const double w = (x - xs[lo]) / dx;
    return (1.0 - w) * vs[lo] + w * vs[hi];
  }

  void apex(double& a, double& b, double& vmax) const {
    vmax = -std::numeric_limits<double>::infinity();
    for (double v : vs) vmax = std::max(vmax, v);
    const double tol = 1e-13 * (1.0 + std::fabs(vmax));
    a = std::numeric_limits<double>::infinity();
    b = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (vs[i] >= vmax - tol) {
        a = std::min(a, xs[i]);
        b = std::max(b, xs[i]);
      }
  }

  // replace f by x -> max_{|y - x| <= delta, y in dom f} f(y); the domain
  // itself grows by delta on each side, clamped to the phi box [-1, 1]
  void sup_window(double delta) {
    if (xs.size() == 1) {
      const double x0 = xs[0], v0 = vs[0];
      xs = {std::max(-1.0, x0 - delta), std::min(1.0, x0 + delta)};
      vs = {v0, v0};
      return;
    }
    const double lo = std::max(-1.0, xs.front() - delta);
    const double hi = std::min(1.0, xs.back() + delta);
    double a, b, vmax;
    apex(a, b, vmax);
    std::vector<double> nx, nv;
    nx.reserve(xs.size() + 2);
    nv.reserve(xs.size() + 2);
    auto push = [&](double x, double v) {
      x = std::clamp(x, lo, hi);
      if (!nx.empty() && x <= nx.back() + 1e-15) {
        if (v > nv.back()) nv.back() = v;
        return;
      }
      nx.push_back(x);
      nv.push_back(v);
    };
    if (lo + delta < a) {
      push(lo, eval(lo + delta));
      for (std::size_t i = 0; i < xs.size() && xs[i] < a; ++i)
        if (xs[i] - delta > lo) push(xs[i] - delta, vs[i]);
    }
    push(std::max(lo, a - delta), vmax);
    push(std::min(hi, b + delta), vmax);
    if (hi - delta > b) {
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > b && xs[i] + delta < hi) push(xs[i] + delta, vs[i]);
      push(hi, eval(hi - delta));
    }
    if (nx.size() == 1) {
      nx = {lo, hi};
      nv = {vmax, vmax};
    }
    xs = std::move(nx);
    vs = std::move(nv);
  }
};

struct ChainResult {
  double value = 0.0;
  std::vector<double> phi;
};

// maximize sum w_i phi_i over |phi_i| <= 1, |phi_{i+1} - phi_i| <= delta by a
// forward concave sweep with an apex backtrace. phi_0 may be pinned (cycles),
// in which case wrap_delta > 0 adds |phi_{n-1} - phi_0| <= wrap_delta.
ChainResult solve_chain(const std::vector<double>& w, double delta, bool pin_first,
                        double first_value, double wrap_delta = 0.0) {
  const std::size_t n = w.size();
  ConcavePl v = pin_first ? ConcavePl::point(first_value, w[0] * first_value)
                          : ConcavePl::linear(-1.0, 1.0, w[0]);
  std::vector<double> apex_a(n, 0.0), apex_b(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double vm;
    v.apex(apex_a[i - 1], apex_b[i - 1], vm);
    v.sup_window(delta);
    v.add_linear(w[i]);
  }
  double la, lb, vmax;
  v.apex(la, lb, vmax);

  ChainResult out;
  out.phi.assign(n, 0.0);
  if (pin_first && wrap_delta > 0.0) {
    const double lo = std::clamp(first_value - wrap_delta, -1.0, 1.0);
    const double hi = std::clamp(first_value + wrap_delta, -1.0, 1.0);
    double best_x = lo, best_v = -std::numeric_limits<double>::infinity();
    auto consider = [&](double x) {
      x = std::clamp(x, lo, hi);
      const double val = v.eval(x);
      if (val > best_v) {
        best_v = val;
        best_x = x;
      }
    };
    consider(lo);
    consider(hi);
    for (double x : v.xs) consider(x);
    out.value = best_v;
    out.phi[n - 1] = best_x;
  } else {
    out.value = vmax;
    out.phi[n - 1] = std::clamp(0.0, la, lb);
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const double next = out.phi[i + 1];
    double x = std::clamp(next, apex_a[i], apex_b[i]);
    x = std::clamp(x, next - delta, next + delta);
    out.phi[i] = std::clamp(x, -1.0, 1.0);
  }
  if (pin_first) out.phi[0] = first_value;
  return out;
}

double chain_objective(const std::vector<double>& w, const std::vector<double>& phi) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * phi[i];
  return s;
}

BoundedLipschitzResult bl_exact_1d(const GridMeasure& mu, const GridMeasure& nu) {
  const PeriodicGrid& g = mu.grid;
  const std::size_t n = g.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = mu.masses[i] - nu.masses[i];
  const double h = g.spacing();

  BoundedLipschitzResult res;
  if (mu.geometry == Geometry::line_segment) {
    ChainResult c = solve_chain(w, h, false, 0.0);
    res.value = c.value;
    res.phi = std::move(c.phi);
  } else {
    auto value_at = [&](double t) { return solve_chain(w, h, true, t, h).value; };
    const double invphi = 0.6180339887498949;
    double a = -1.0, b = 1.0;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = value_at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = value_at(x2);
      }
    }
    const double t = f1 >= f2 ? x1 : x2;
    ChainResult c = solve_chain(w, h, true, t, h);
    res.value = c.value;
    res.phi = std::move(c.phi);
  }
  const double check = chain_objective(w, res.phi);
  if (std::fabs(check - res.value) > 1e-8 * (1.0 + std::fabs(res.value)))
    throw numerical_error("bounded_lipschitz: certificate does not reproduce the optimum");
  res.value = check;  // report the value attained by the certificate
  res.gap = 0.0;
  return res;
}

struct EdgeList {
  std::vector<int> from, to;
  std::vector<double> len;
};

EdgeList grid_edges(const PeriodicGrid& g, Geometry geom) {
  EdgeList e;
  const int n = g.n();
  const double h = g.spacing();
  auto add = [&](int a, int b) {
    e.from.push_back(a);
    e.to.push_back(b);
    e.len.push_back(h);
  };
  if (g.dim() == 1) {
    for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
    if (geom == Geometry::torus) add(n - 1, 0);
    return e;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int idx = i * n + j;
      if (j + 1 < n)
        add(idx, idx + 1);
      else if (geom == Geometry::torus)
        add(idx, i * n);
      if (i + 1 < n)
        add(idx, idx + n);
      else if (geom == Geometry::torus)
        add(idx, j);
    }
  return e;
}

}  // namespace

BoundedLipschitzResult bounded_lipschitz_iterative(const GridMeasure& mu,
                                                   const GridMeasure& nu, double gap_tol,
                                                   long max_iters) {
  if (mu.grid != nu.grid || mu.geometry != nu.geometry)
    throw validation_error("bounded_lipschitz: measures live on different domains");
  const std::size_t n = mu.grid.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = mu.masses[i] - nu.masses[i];
  EdgeList edges = grid_edges(mu.grid, mu.geometry);
  const std::size_t m = edges.from.size();

  std::vector<double> phi(n, 0.0), phi_old(n, 0.0), phi_bar(n, 0.0), flow(m, 0.0),
      div(n, 0.0);
  const double tau = 0.35, sigma = 0.35;  // tau sigma ||D||^2 <= 1 on grid graphs

  auto repaired_value = [&](const std::vector<double>& raw, std::vector<double>& out) {
    out = raw;
    for (double& x : out) x = std::clamp(x, -1.0, 1.0);
    double scale = 1.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double d = std::fabs(out[edges.to[e]] - out[edges.from[e]]);
      if (d > edges.len[e] * scale) scale = d / edges.len[e];
    }
    if (scale > 1.0)
      for (double& x : out) x /= scale;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += w[i] * out[i];
    return v;
  };
  auto flow_value = [&](const std::vector<double>& f) {
    std::fill(div.begin(), div.end(), 0.0);
    double v = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      v += edges.len[e] * std::fabs(f[e]);
      div[edges.from[e]] -= f[e];
      div[edges.to[e]] += f[e];
    }
    for (std::size_t i = 0; i < n; ++i) v += std::fabs(w[i] - div[i]);
    return v;
  };

  BoundedLipschitzResult res;
  res.gap = std::numeric_limits<double>::infinity();
  std::vector<double> cand;
  double best_val = -std::numeric_limits<double>::infinity();
  for (long it = 1; it <= max_iters; ++it) {
    for (std::size_t e = 0; e < m; ++e) {
      // prox of sigma * len |.|: soft threshold
      const double v = flow[e] + sigma * (phi_bar[edges.to[e]] - phi_bar[edges.from[e]]);
      const double th = sigma * edges.len[e];
      flow[e] = v > th ? v - th : (v < -th ? v + th : 0.0);
    }
    phi_old = phi;
    std::fill(div.begin(), div.end(), 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      div[edges.from[e]] -= flow[e];
      div[edges.to[e]] += flow[e];
    }
    for (std::size_t i = 0; i < n; ++i)
      phi[i] = std::clamp(phi[i] - tau * div[i] + tau * w[i], -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) phi_bar[i] = 2.0 * phi[i] - phi_old[i];

    if (it % 250 == 0 || it == max_iters) {
      const double dual_val = repaired_value(phi, cand);
      if (dual_val > best_val) {
        best_val = dual_val;
        res.phi = cand;
      }
      const double primal_val = flow_value(flow);
      res.gap = primal_val - best_val;
      res.value = best_val;
      if (res.gap < gap_tol) return res;
    }
  }
  std::ostringstream os;
  os << "bounded_lipschitz: duality gap " << res.gap << " above tolerance " << gap_tol
     << " at the iteration cap";
  throw numerical_error(os.str());
}

BoundedLipschitzResult bounded_lipschitz(const GridMeasure& mu, const GridMeasure& nu) {
  if (mu.grid != nu.grid || mu.geometry != nu.geometry)
    throw validation_error("bounded_lipschitz: measures live on different domains");
  if (mu.grid.dim() == 1) return bl_exact_1d(mu, nu);
  return bounded_lipschitz_iterative(mu, nu);
}

double dbl_momentum_sq(const VectorField& ma, const VectorField& mb, Geometry geom) {
  double acc = 0.0;
  for (int c = 0; c < ma.dim(); ++c) {
    GridMeasure a = GridMeasure::from_density(ma[c], geom);
    GridMeasure b = GridMeasure::from_density(mb[c], geom);
    const double v = bounded_lipschitz(a, b).value;
    acc += v * v;
  }
  return acc;
}

W2BoundReport w2_growth_check(const ErTrajectory& er, const FpmeTrajectory& lim,
                              const Params& p) {
  if (er.size() != lim.size() || er.size() < 2)
    throw validation_error("w2_growth_check: trajectories must share the output grid");
  W2BoundReport rep;
  rep.times = er.times;

  double gmax = 0.0;
  std::vector<double> relkin(er.size());
  for (std::size_t i = 0; i < er.size(); ++i) {
    VectorField u = lim.velocity_at(i, p);
    for (int c = 0; c < u.dim(); ++c)
      for (int a = 0; a < u.dim(); ++a) gmax = std::max(gmax, derivative(u[c], a).max_abs());
    relkin[i] = 2.0 * modulated_kinetic(er.at(i), u);
    rep.d2_sq.push_back(
        std::pow(wasserstein2(er.at(i).rho, lim.at(i).rho, Geometry::torus), 2));
  }
  rep.grad_u_max = gmax;

  // majorant 2 e^{2 sqrt(2) G t} (d2(0)^2 + 2 t int_0^t relkin)
  double integral = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < er.size(); ++i) {
    if (i > 0)
      integral += 0.5 * (relkin[i] + relkin[i - 1]) * (rep.times[i] - rep.times[i - 1]);
    const double t = rep.times[i];
    const double maj =
        2.0 * std::exp(2.0 * std::sqrt(2.0) * gmax * t) * (rep.d2_sq[0] + 2.0 * t * integral);
    rep.majorant.push_back(maj);
    if (maj > 1e-30) worst = std::max(worst, rep.d2_sq[i] / maj);
  }
  rep.worst_ratio = worst;
  return rep;
}

}  // namespace relax
