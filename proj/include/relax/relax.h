#ifndef RELAX_RELAX_H
#define RELAX_RELAX_H

/* C interface to the relaxation laboratory. All entry points run one command
 * against a configuration file and report through integer status codes:
 *   0  success
 *   1  numerical failure (instability, non-convergence, failed study)
 *   2  usage or validation error
 * The last error message is retained on the context. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct relax_ctx relax_ctx;

#define RELAX_OK 0
#define RELAX_ERR_NUMERIC 1
#define RELAX_ERR_USAGE 2

relax_ctx* relax_ctx_create(void);
void relax_ctx_destroy(relax_ctx* ctx);

/* message describing the most recent failure; empty string if none */
const char* relax_ctx_error(const relax_ctx* ctx);

/* worker threads used by sweeps and studies (default 1) */
int relax_ctx_set_threads(relax_ctx* ctx, int threads);

/* kind: "er" | "fpme". Writes trajectory.bin, series.csv, meta.json. */
int relax_simulate(relax_ctx* ctx, const char* kind, const char* config_path,
                   const char* out_dir, int has_seed, uint64_t seed, int force);

/* Writes sweep.json, per-epsilon CSV series, meta.json. */
int relax_sweep(relax_ctx* ctx, const char* config_path, const char* out_dir,
                int has_seed, uint64_t seed, int force);

/* study: commutator | hls | extension | lower_bounds | metric_sanity.
 * Writes <study>.json into out_dir. RELAX_ERR_NUMERIC when the study fails. */
int relax_verify(relax_ctx* ctx, const char* study, const char* out_dir, int has_seed,
                 uint64_t seed);

/* metric: w2 | dbl | l1 | l2. Distance between two stored fields. */
int relax_field_distance(relax_ctx* ctx, const char* file_a, const char* file_b,
                         const char* metric, double* out_value);

/* library identification */
const char* relax_version(void);

#ifdef __cplusplus
}
#endif

#endif /* RELAX_RELAX_H */
