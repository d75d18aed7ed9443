#ifndef GREENRAN_H
#define GREENRAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GRN_API __declspec(dllexport)
#else
#define GRN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum grn_status {
  GRN_OK = 0,
  GRN_ERR_INVALID_ARGUMENT = 1,
  GRN_ERR_CONFIG = 2,
  GRN_ERR_DATA = 3,
  GRN_ERR_RUNTIME = 4,
  GRN_ERR_STATE = 5
} grn_status;

typedef struct grn_scenario grn_scenario;
typedef struct grn_env grn_env;

/* Message of the last failed call on this thread; never NULL. */
GRN_API const char* grn_last_error(void);
GRN_API const char* grn_version(void);

/* ---- scenarios ---- */

GRN_API grn_status grn_scenario_default(grn_scenario** out);
GRN_API grn_status grn_scenario_load(const char* path, grn_scenario** out);
/* base_dir may be NULL (relative trace paths resolve against "."). */
GRN_API grn_status grn_scenario_parse(const char* json, const char* base_dir, grn_scenario** out);
GRN_API void grn_scenario_free(grn_scenario* s);

GRN_API grn_status grn_scenario_set_seeds(grn_scenario* s, const uint64_t* seeds, size_t count);
GRN_API grn_status grn_scenario_set_output_dir(grn_scenario* s, const char* dir);
/* City-wide solar trace file (hour,kwh_per_unit). */
GRN_API grn_status grn_scenario_set_solar_trace(grn_scenario* s, const char* path);
/* Drop any trace files and use the synthetic generator. */
GRN_API grn_status grn_scenario_set_solar_synthetic(grn_scenario* s, double peak_kwh, double cloud_sigma);
/* dran, cran, rldfs_ql, rldfs_sarsa or oracle. */
GRN_API grn_status grn_scenario_set_policy(grn_scenario* s, const char* policy);

/* Canonical JSON. Writes at most cap bytes including the terminator; *needed
   receives the full length plus one. buf may be NULL when cap is 0. */
GRN_API grn_status grn_scenario_to_json(const grn_scenario* s, char* buf, size_t cap, size_t* needed);

/* ---- commands (CSV outputs below the scenario's output directory) ---- */

GRN_API grn_status grn_train(const grn_scenario* s);
/* artifacts_dir: output directory of a previous grn_train; NULL for static policies. */
GRN_API grn_status grn_evaluate(const grn_scenario* s, const char* artifacts_dir);
/* axis: panel, battery or traffic. */
GRN_API grn_status grn_sweep(const grn_scenario* s, const char* axis, const double* values, size_t count);
/* total_opex may be NULL. */
GRN_API grn_status grn_oracle(const grn_scenario* s, double* total_opex);

/* ---- stepping an environment directly ---- */

typedef struct grn_observation {
  double battery_kwh;
  size_t time_of_day;
  size_t load_count; /* entries written to the caller's loads buffer */
} grn_observation;

GRN_API grn_status grn_env_create(const grn_scenario* s, uint64_t seed, grn_env** out);
GRN_API void grn_env_free(grn_env* e);
GRN_API grn_status grn_env_reset(grn_env* e);

GRN_API size_t grn_env_node_count(const grn_env* e); /* DUs then the CU */
GRN_API size_t grn_env_split_width(const grn_env* e); /* split entries per DU */
GRN_API size_t grn_env_time(const grn_env* e);
GRN_API int grn_env_done(const grn_env* e);

/* splits: du_count * split_width entries, DU-major. levels: node_count indices
   into the dispatch levels. opex may be NULL. */
GRN_API grn_status grn_env_step(grn_env* e, const uint8_t* splits, size_t split_count, const size_t* levels,
                                size_t level_count, double* opex);
/* One step of a static policy (dran or cran). */
GRN_API grn_status grn_env_step_policy(grn_env* e, const char* policy, double* opex);

GRN_API grn_status grn_env_observe(const grn_env* e, size_t node, grn_observation* out, double* loads,
                                   size_t load_cap);
GRN_API grn_status grn_env_reward(const grn_env* e, double* out);
GRN_API grn_status grn_env_total_opex(const grn_env* e, double* out);

#ifdef __cplusplus
}
#endif

#endif
