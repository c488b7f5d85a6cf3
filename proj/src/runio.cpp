#include "runio.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "studies.hpp"
#include "trajectory.hpp"

namespace relax {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot write '" + path + "'");
  os << text;
}

void write_meta(const std::string& dir, const Config& cfg, std::uint64_t seed,
                const std::string& command) {
  json meta = {{"command", command},
               {"config_hash", config_hash(cfg.text)},
               {"seed", seed},
               {"grid", {{"d", cfg.params.d}, {"n", cfg.grid.n}, {"length", cfg.grid.length}}},
               {"regime", regime_name(cfg.params.regime)},
               {"geometry", "torus_geodesic"},
               {"momentum_distance", "componentwise_root_sum_square"}};
  write_text(dir + "/meta.json", meta.dump(2) + "\n");
}

std::uint64_t effective_seed(const Config& cfg, const CliOptions& opt) {
  return opt.has_seed ? opt.seed : cfg.run.seed;
}

}  // namespace

void prepare_out_dir(const std::string& dir, const std::string& hash, bool force) {
  fs::create_directories(dir);
  const std::string meta_path = dir + "/meta.json";
  if (fs::exists(meta_path) && !force) {
    std::ifstream is(meta_path);
    json meta;
    try {
      is >> meta;
    } catch (...) {
      throw validation_error("output dir '" + dir + "' holds an unreadable meta.json; "
                             "pass --force to overwrite");
    }
    if (meta.contains("config_hash") && meta["config_hash"] != hash)
      throw validation_error("output dir '" + dir + "' holds results for config hash " +
                             meta["config_hash"].get<std::string>() +
                             "; pass --force to overwrite");
  }
}

Field build_initial_density(const PeriodicGrid& g, const InitialSpec& spec) {
  if (spec.profile.rfind("file:", 0) == 0) {
    StoredField stored = load_field(spec.profile.substr(5));
    if (stored.grid != g)
      throw validation_error("initial.profile: stored field grid does not match [grid]");
    if (stored.data.empty())
      throw validation_error("initial.profile: stored field holds no arrays");
    Field rho = Field::from_nodal(g, stored.data.front());
    if (rho.min() <= 0.0)
      throw validation_error("initial.profile: stored density must be positive");
    return scale(rho, 1.0 / rho.integral());
  }
  return initial_density(g, spec);
}

void run_simulate(const std::string& kind, const CliOptions& opt) {
  if (kind != "er" && kind != "fpme")
    throw validation_error("simulate: kind must be er or fpme");
  Config cfg = load_config(opt.config_path);
  if (cfg.epsilons.size() != 1)
    throw validation_error("simulate: config must carry a single epsilon");
  const std::uint64_t seed = effective_seed(cfg, opt);
  prepare_out_dir(opt.out_dir, config_hash(cfg.text), opt.force);

  PeriodicGrid grid(cfg.params.d, cfg.grid.n, cfg.grid.length);
  Field rho0 = build_initial_density(grid, cfg.initial);
  StepPolicy pol;
  pol.scale = cfg.run.dt_scale();
  std::vector<EnergyReport> rows;

  if (kind == "er") {
    VectorField u0 = well_prepared_velocity(rho0, cfg.params);
    FluidState s0{rho0, multiply_dealias(rho0, u0), 0.0};
    RunOptions ropt;
    ropt.output_times = cfg.run.output_times();
    ropt.fixed_dt = cfg.run.fixed_dt();
    ErTrajectory traj = run_er(s0, cfg.params, pol, cfg.run.t_end, ropt);
    save_trajectory(opt.out_dir + "/trajectory.bin", traj);
    for (const auto& s : traj.snaps) rows.push_back(energy_report(s, cfg.params));
  } else {
    FpmeRunOptions ropt;
    ropt.output_times = cfg.run.output_times();
    ropt.fixed_dt = cfg.run.fixed_dt();
    FpmeTrajectory traj =
        run_fpme(LimitState{rho0, 0.0}, cfg.params, pol, cfg.run.t_end, ropt);
    save_trajectory(opt.out_dir + "/trajectory.bin", traj);
    for (const auto& s : traj.snaps) rows.push_back(energy_report(s, cfg.params));
  }
  write_csv(opt.out_dir + "/series.csv", cfg.params.d, rows);
  write_meta(opt.out_dir, cfg, seed, "simulate-" + kind);
}

namespace {

json rate_json(const RateFit& f) {
  json j = {{"ok", f.ok}, {"slope", f.slope}, {"intercept", f.intercept},
            {"residual", f.residual}};
  if (f.floored) j["floored"] = true;
  if (!f.note.empty()) j["note"] = f.note;
  return j;
}

std::string eps_csv_name(double eps) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "eps_%.6f.csv", eps);
  return buf;
}

}  // namespace

SweepResult run_sweep_command(const CliOptions& opt) {
  Config cfg = load_config(opt.config_path);
  const std::uint64_t seed = effective_seed(cfg, opt);
  prepare_out_dir(opt.out_dir, config_hash(cfg.text), opt.force);

  SweepResult res = run_sweep(cfg, opt.threads);

  json per_eps = json::array();
  for (const auto& r : res.per_eps) {
    write_csv(opt.out_dir + "/" + eps_csv_name(r.epsilon), cfg.params.d, r.series);
    per_eps.push_back({{"epsilon", r.epsilon},
                       {"sup_d2_sq", r.sup_d2_sq},
                       {"sup_negsob_sq", r.sup_negsob_sq},
                       {"int_dbl_momentum_sq", r.int_dbl_sq},
                       {"sup_lgamma_err_sq", r.sup_lgamma_sq},
                       {"int_l1_momentum_sq", r.int_l1_sq},
                       {"est_mod_constant", r.est_mod_constant},
                       {"gronwall_ratio", r.gronwall_ratio},
                       {"coercivity_ok", r.coercivity_ok},
                       {"min_coercivity_ratio", r.min_coercivity_ratio},
                       {"csv", eps_csv_name(r.epsilon)}});
  }
  json sweep = {{"theorem_part", res.theorem_part},
                {"epsilons", res.epsilons},
                {"per_epsilon", per_eps},
                {"rates",
                 {{"res2", rate_json(res.rate_res2)},
                  {"dbl_momentum", rate_json(res.rate_dbl)},
                  {"res3", rate_json(res.rate_res3)}}},
                {"truncation",
                 {{"res2", res.trunc_res2}, {"dbl", res.trunc_dbl}, {"res3", res.trunc_res3}}},
                {"metadata",
                 {{"config_hash", res.config_hash},
                  {"seed", seed},
                  {"grid", {{"d", cfg.params.d}, {"n", cfg.grid.n}, {"length", cfg.grid.length}}},
                  {"regime", regime_name(cfg.params.regime)},
                  {"geometry", "torus_geodesic"},
                  {"momentum_distance", "componentwise_root_sum_square"},
                  {"well_prepared", true}}}};
  write_text(opt.out_dir + "/sweep.json", sweep.dump(2) + "\n");
  write_meta(opt.out_dir, cfg, seed, "sweep");
  return res;
}

bool run_verify_command(const std::string& study, const CliOptions& opt) {
  fs::create_directories(opt.out_dir);
  StudyOutcome outcome = run_study(study, opt.has_seed ? opt.seed : 0, opt.threads);
  write_text(opt.out_dir + "/" + outcome.name + ".json", outcome.report.dump(2) + "\n");
  return outcome.pass;
}

double field_distance(const std::string& file_a, const std::string& file_b,
                      const std::string& metric) {
  StoredField a = load_field(file_a);
  StoredField b = load_field(file_b);
  if (a.grid != b.grid) throw validation_error("metrics: fields live on different grids");
  if (a.data.empty() || b.data.empty())
    throw validation_error("metrics: stored fields hold no arrays");
  Field fa = Field::from_nodal(a.grid, a.data.front());
  Field fb = Field::from_nodal(b.grid, b.data.front());
  if (metric == "l1") return norm_l1(sub(fa, fb));
  if (metric == "l2") return norm_l2(sub(fa, fb));
  if (metric == "w2") return wasserstein2(fa, fb, Geometry::torus);
  if (metric == "dbl")
    return bounded_lipschitz(GridMeasure::from_density(fa, Geometry::torus),
                             GridMeasure::from_density(fb, Geometry::torus))
        .value;
  throw validation_error("metrics: unknown metric '" + metric + "'");
}

}  // namespace relax
