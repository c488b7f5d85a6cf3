#include "relax/relax.h"

#include <string>

#include "errors.hpp"
#include "runio.hpp"

struct relax_ctx {
  std::string error;
  int threads = 1;
};

namespace {

int guarded(relax_ctx* ctx, const std::function<void()>& body) {
  if (!ctx) return RELAX_ERR_USAGE;
  ctx->error.clear();
  try {
    body();
    return RELAX_OK;
  } catch (const relax::validation_error& e) {
    ctx->error = e.what();
    return RELAX_ERR_USAGE;
  } catch (const relax::numerical_error& e) {
    ctx->error = e.what();
    return RELAX_ERR_NUMERIC;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return RELAX_ERR_NUMERIC;
  }
}

relax::CliOptions options(const relax_ctx* ctx, const char* config_path,
                          const char* out_dir, int has_seed, uint64_t seed, int force) {
  relax::CliOptions opt;
  opt.config_path = config_path ? config_path : "";
  opt.out_dir = out_dir && *out_dir ? out_dir : ".";
  opt.has_seed = has_seed != 0;
  opt.seed = seed;
  opt.threads = ctx->threads;
  opt.force = force != 0;
  return opt;
}

}  // namespace

extern "C" {

relax_ctx* relax_ctx_create(void) { return new relax_ctx(); }

void relax_ctx_destroy(relax_ctx* ctx) { delete ctx; }

const char* relax_ctx_error(const relax_ctx* ctx) {
  return ctx ? ctx->error.c_str() : "null context";
}

int relax_ctx_set_threads(relax_ctx* ctx, int threads) {
  if (!ctx) return RELAX_ERR_USAGE;
  if (threads < 1) {
    ctx->error = "threads must be >= 1";
    return RELAX_ERR_USAGE;
  }
  ctx->threads = threads;
  return RELAX_OK;
}

int relax_simulate(relax_ctx* ctx, const char* kind, const char* config_path,
                   const char* out_dir, int has_seed, uint64_t seed, int force) {
  return guarded(ctx, [&] {
    if (!kind || !config_path) throw relax::validation_error("simulate: missing arguments");
    relax::run_simulate(kind, options(ctx, config_path, out_dir, has_seed, seed, force));
  });
}

int relax_sweep(relax_ctx* ctx, const char* config_path, const char* out_dir,
                int has_seed, uint64_t seed, int force) {
  return guarded(ctx, [&] {
    if (!config_path) throw relax::validation_error("sweep: missing config path");
    relax::run_sweep_command(options(ctx, config_path, out_dir, has_seed, seed, force));
  });
}

int relax_verify(relax_ctx* ctx, const char* study, const char* out_dir, int has_seed,
                 uint64_t seed) {
  return guarded(ctx, [&] {
    if (!study) throw relax::validation_error("verify: missing study name");
    relax::CliOptions opt = options(ctx, "", out_dir, has_seed, seed, 0);
    if (!relax::run_verify_command(study, opt))
      throw relax::numerical_error(std::string("verify: study '") + study + "' failed");
  });
}

int relax_field_distance(relax_ctx* ctx, const char* file_a, const char* file_b,
                         const char* metric, double* out_value) {
  return guarded(ctx, [&] {
    if (!file_a || !file_b || !metric || !out_value)
      throw relax::validation_error("metrics: missing arguments");
    *out_value = relax::field_distance(file_a, file_b, metric);
  });
}

const char* relax_version(void) { return "relax 1.0.0"; }

}  // extern "C"
