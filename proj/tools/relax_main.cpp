// Command-line front end. Talks to the engine exclusively through the shared
// C interface so the binary stays decoupled from the library internals.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "relax/relax.h"

namespace {

struct CtxDeleter {
  void operator()(relax_ctx* c) const { relax_ctx_destroy(c); }
};

struct CommonFlags {
  std::string config;
  std::string out = ".";
  std::string seed_text;
  int threads = 0;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  if (needs_config)
    cmd->add_option("--config", f.config, "configuration file")->required();
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed_text, "master seed (overrides the config)");
  cmd->add_option("--threads", f.threads, "worker threads (falls back to RELAX_THREADS)");
  cmd->add_flag("--force", f.force, "overwrite results for a different config hash");
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("RELAX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

bool parse_seed(const std::string& text, uint64_t& seed) {
  if (text.empty()) return false;
  seed = std::strtoull(text.c_str(), nullptr, 10);
  return true;
}

int finish(relax_ctx* ctx, int status, const char* command) {
  if (status != RELAX_OK)
    std::fprintf(stderr, "relax %s: error (%d): %s\n", command, status,
                 relax_ctx_error(ctx));
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxation laboratory for the damped nonlocal Euler system and its "
               "porous-medium limit"};
  app.require_subcommand(1);

  CommonFlags sim_er_flags, sim_fpme_flags, sweep_flags, verify_flags;
  std::string study;
  std::string metric = "l2";
  std::string file_a, file_b;

  CLI::App* sim_er = app.add_subcommand("simulate-er", "run the relaxation system");
  add_common(sim_er, sim_er_flags, true);

  CLI::App* sim_fpme = app.add_subcommand("simulate-fpme", "run the limit equation");
  add_common(sim_fpme, sim_fpme_flags, true);

  CLI::App* sweep = app.add_subcommand("sweep", "epsilon sweep with rate fits");
  add_common(sweep, sweep_flags, true);

  CLI::App* verify = app.add_subcommand("verify", "run a named verification study");
  verify->add_option("study", study,
                     "commutator | hls | extension | lower_bounds | metric_sanity")
      ->required();
  add_common(verify, verify_flags, false);

  CLI::App* metrics = app.add_subcommand("metrics", "distance between two stored fields");
  metrics->add_option("field_a", file_a, "first stored field")->required();
  metrics->add_option("field_b", file_b, "second stored field")->required();
  metrics->add_option("--metric", metric, "w2 | dbl | l1 | l2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : RELAX_ERR_USAGE;
  }

  std::unique_ptr<relax_ctx, CtxDeleter> ctx(relax_ctx_create());

  auto run_with = [&](const CommonFlags& f, auto&& body) {
    relax_ctx_set_threads(ctx.get(), resolve_threads(f.threads));
    uint64_t seed = 0;
    const bool has_seed = parse_seed(f.seed_text, seed);
    return body(has_seed, seed);
  };

  if (sim_er->parsed())
    return finish(ctx.get(),
                  run_with(sim_er_flags,
                           [&](bool hs, uint64_t s) {
                             return relax_simulate(ctx.get(), "er",
                                                   sim_er_flags.config.c_str(),
                                                   sim_er_flags.out.c_str(), hs, s,
                                                   sim_er_flags.force);
                           }),
                  "simulate-er");
  if (sim_fpme->parsed())
    return finish(ctx.get(),
                  run_with(sim_fpme_flags,
                           [&](bool hs, uint64_t s) {
                             return relax_simulate(ctx.get(), "fpme",
                                                   sim_fpme_flags.config.c_str(),
                                                   sim_fpme_flags.out.c_str(), hs, s,
                                                   sim_fpme_flags.force);
                           }),
                  "simulate-fpme");
  if (sweep->parsed())
    return finish(ctx.get(),
                  run_with(sweep_flags,
                           [&](bool hs, uint64_t s) {
                             return relax_sweep(ctx.get(), sweep_flags.config.c_str(),
                                                sweep_flags.out.c_str(), hs, s,
                                                sweep_flags.force);
                           }),
                  "sweep");
  if (verify->parsed()) {
    const int status = run_with(verify_flags, [&](bool hs, uint64_t s) {
      return relax_verify(ctx.get(), study.c_str(), verify_flags.out.c_str(), hs, s);
    });
    if (status == RELAX_OK)
      std::printf("PASS %s\n", study.c_str());
    else if (status == RELAX_ERR_NUMERIC)
      std::printf("FAIL %s\n", study.c_str());
    return finish(ctx.get(), status, "verify");
  }
  if (metrics->parsed()) {
    double value = 0.0;
    const int status = relax_field_distance(ctx.get(), file_a.c_str(), file_b.c_str(),
                                            metric.c_str(), &value);
    if (status == RELAX_OK) std::printf("%.17g\n", value);
    return finish(ctx.get(), status, "metrics");
  }
  return RELAX_ERR_USAGE;
}
