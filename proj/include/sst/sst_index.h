/* C interface to the shaped hash-index library and its benchmark harness.
 *
 * Every fallible call returns an sst_status. On failure a human-readable
 * message for the calling thread is available from sst_last_error().
 * Handles are opaque and owned by the caller; release them with the matching
 * *_destroy function. Passing NULL to a destroy function is a no-op. */
#ifndef SST_INDEX_H
#define SST_INDEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SST_INDEX_BUILDING)
#    define SST_API __declspec(dllexport)
#  else
#    define SST_API __declspec(dllimport)
#  endif
#else
#  define SST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sst_status {
  SST_OK = 0,
  SST_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown name */
  SST_ERR_DOMAIN = 2,           /* tag, load factor, order out of range */
  SST_ERR_CAPACITY = 3,         /* no empty slot reachable */
  SST_ERR_EMPTY_INPUT = 4,
  SST_ERR_IO = 5,
  SST_ERR_PARSE = 6,
  SST_ERR_TIMING = 7,
  SST_ERR_INTERNAL = 8
} sst_status;

typedef enum sst_scheme {
  SST_SCHEME_LINEAR = 0,
  SST_SCHEME_QUADRATIC = 1,
  SST_SCHEME_DOUBLE = 2,
  SST_SCHEME_ROBINHOOD = 3
} sst_scheme;

typedef enum sst_query_mode { SST_QUERY_UNIFORM = 0, SST_QUERY_HOTSPOT = 1 } sst_query_mode;

typedef struct sst_table sst_table;
typedef struct sst_results sst_results;

typedef struct sst_insert_stats {
  uint64_t probes;
  int collided;
  uint32_t chosen_tag;
  uint64_t evaluation_probes;
} sst_insert_stats;

typedef struct sst_lookup_result {
  int found;
  uint64_t probes;
  uint32_t tag;
} sst_lookup_result;

typedef struct sst_experiment_config {
  sst_scheme scheme;
  int sst;    /* nonzero: shaping enabled */
  uint32_t k; /* shaping order, ignored when sst == 0 */
  uint64_t m_requested;
  double load_factor;
  uint32_t q_multiplier;
  sst_query_mode mode;
  uint64_t seed;
  double hot_fraction;
  double hot_weight;
  uint32_t runs;
  uint32_t warmup_runs;
} sst_experiment_config;

typedef struct sst_run_result {
  sst_scheme scheme;
  int sst;
  uint32_t k;
  uint32_t metadata_bits;
  uint64_t m_requested;
  uint64_t m_actual;
  double load_factor;
  uint32_t q_multiplier;
  sst_query_mode mode;
  uint64_t seed;
  uint32_t runs;
  double build_time_s;
  double lookup_time_us_per_query;
  double total_time_s;
  double mean_probes;
  double p95_probes;
  double p99_probes;
  double collisions_per_record;
  double max_cluster;
  double insert_probes;
  double evaluation_probes;
  double lookup_probes;
} sst_run_result;

SST_API const char *sst_status_string(sst_status status);
SST_API const char *sst_last_error(void);

/* Keyspace */
SST_API sst_status sst_shape(uint64_t key, uint32_t tag, uint32_t k, uint64_t *out);
SST_API sst_status sst_unshape(uint64_t shaped, uint32_t tag, uint32_t k, uint64_t *out);
SST_API uint32_t sst_metadata_bits(uint32_t k);
SST_API double sst_analytic_collision_rate(double alpha, uint32_t k);

/* Tables. k == 0 creates a plain (unshaped) table. */
SST_API sst_status sst_table_create(uint64_t m_requested, sst_scheme scheme, uint32_t k,
                                    sst_table **out);
SST_API void sst_table_destroy(sst_table *table);
SST_API sst_status sst_table_insert(sst_table *table, uint64_t key, sst_insert_stats *out);
SST_API sst_status sst_table_lookup(const sst_table *table, uint64_t key, sst_lookup_result *out);
SST_API sst_status sst_table_probe_cost(const sst_table *table, uint64_t stored, uint64_t *out);
SST_API uint64_t sst_table_capacity(const sst_table *table);
SST_API uint64_t sst_table_size(const sst_table *table);
SST_API sst_status sst_table_max_cluster(const sst_table *table, uint64_t *out);

/* Harness */
SST_API void sst_experiment_config_init(sst_experiment_config *config);
SST_API sst_status sst_run_single(const sst_experiment_config *config, int structural_only,
                                  sst_run_result *out);

SST_API sst_status sst_results_create(sst_results **out);
SST_API void sst_results_destroy(sst_results *results);
SST_API size_t sst_results_size(const sst_results *results);
SST_API sst_status sst_results_get(const sst_results *results, size_t index, sst_run_result *out);
SST_API sst_status sst_results_append(sst_results *results, const sst_run_result *row);

/* Rows that failed during sst_run_grid are kept out of the result rows and
 * reported here instead. */
SST_API size_t sst_results_failure_count(const sst_results *results);
SST_API const char *sst_results_failure(const sst_results *results, size_t index);

/* Runs a named preset (main, scale, highq, amortization, querymode). The base
 * config supplies seed, runs, warm-up and hotspot parameters. With
 * structural_only set, timing is skipped and configurations run in parallel.
 * Returns SST_OK even when individual rows fail; check the failure count. */
SST_API sst_status sst_run_grid(const char *preset, const sst_experiment_config *base,
                                int structural_only, sst_results **out);
SST_API size_t sst_grid_preset_count(void);
SST_API const char *sst_grid_preset_name(size_t index);

/* CSV. A path of "-" means standard output (write) or standard input (read). */
SST_API sst_status sst_results_write_csv(const sst_results *results, const char *path);
SST_API sst_status sst_results_read_csv(const char *path, sst_results **out);

/* Joins SST rows against their SST-off partners and writes ratio columns.
 * unpaired (optional) receives the number of SST rows without a baseline. */
SST_API sst_status sst_speedups_write_csv(const sst_results *results, const char *path,
                                          size_t *unpaired);

#ifdef __cplusplus
}
#endif

#endif /* SST_INDEX_H */
