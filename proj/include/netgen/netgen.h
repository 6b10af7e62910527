/* Apache License, Version 2.0, refer to LICENSE.txt */
#ifndef NETGEN_NETGEN_H
#define NETGEN_NETGEN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NETGEN_API __declspec(dllexport)
#else
#define NETGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct netgen_graphset netgen_graphset;
typedef struct netgen_model netgen_model;

typedef enum netgen_status {
  NETGEN_OK = 0,
  NETGEN_ERR_INVALID_ARGUMENT = 1,
  NETGEN_ERR_IO = 2,
  NETGEN_ERR_PARSE = 3,
  NETGEN_ERR_NUMERIC = 4,
  NETGEN_ERR_EGO_TOO_SMALL = 5,
  NETGEN_ERR_CONFIG = 6,
  NETGEN_ERR_INTERNAL = 7
} netgen_status;

/* Message for the last failing call on this thread ("" if none). */
NETGEN_API const char* netgen_last_error(void);
/* Newline-separated warnings from the last ingest call on this thread. */
NETGEN_API const char* netgen_last_warnings(void);
NETGEN_API const char* netgen_status_name(netgen_status status);
NETGEN_API void netgen_string_free(char* s);

/* ---- graph sets ---- */

NETGEN_API netgen_status netgen_graphset_load(const char* path, netgen_graphset** out);
NETGEN_API netgen_status netgen_graphset_save(const netgen_graphset* set, const char* path);
NETGEN_API void netgen_graphset_free(netgen_graphset* set);
NETGEN_API size_t netgen_graphset_count(const netgen_graphset* set);
NETGEN_API size_t netgen_graphset_n_nodes(const netgen_graphset* set);
/* Row-major n*n 0/1 matrix of graph `index`; out_len must be n*n. */
NETGEN_API netgen_status netgen_graphset_adjacency(const netgen_graphset* set, size_t index,
                                                   uint8_t* out, size_t out_len);
/* `data` holds count consecutive n*n matrices; diagonal entries must be 0. */
NETGEN_API netgen_status netgen_graphset_from_adjacency(size_t count, size_t n_nodes,
                                                        const uint8_t* data,
                                                        netgen_graphset** out);

/* ---- generators ---- */

typedef enum netgen_generator_kind {
  NETGEN_GEN_ER = 0,
  NETGEN_GEN_CONFIG = 1,
  NETGEN_GEN_KRAPIVSKY = 2
} netgen_generator_kind;

typedef struct netgen_generator_config {
  netgen_generator_kind kind;
  size_t n_nodes;
  size_t count;
  uint64_t seed;
  double er_p;
  double degree_law_exponent;
  double krapivsky_p;
  double krapivsky_lambda;
  double krapivsky_mu;
} netgen_generator_config;

NETGEN_API void netgen_generator_config_init(netgen_generator_config* config);
NETGEN_API netgen_status netgen_generator_kind_parse(const char* name,
                                                     netgen_generator_kind* out);
NETGEN_API netgen_status netgen_generate(const netgen_generator_config* config,
                                         netgen_graphset** out);

/* Loads a SNAP ego directory (or a graphset file of ego graphs with the
   ego at node 0) and draws `count` ego subsamples of `n_nodes` nodes. */
NETGEN_API netgen_status netgen_ego_sample(const char* path, size_t n_nodes, size_t count,
                                           uint64_t seed, size_t* n_egos_out,
                                           netgen_graphset** out);

/* ---- models ---- */

/* kind: deep | rbm | depnet | p1 | markov | higher-order | ergm.
   params_json: JSON object of hyperparameters, or NULL. */
NETGEN_API netgen_status netgen_model_fit(const char* kind, const char* params_json,
                                          const netgen_graphset* train, uint64_t seed,
                                          netgen_model** out);
NETGEN_API netgen_status netgen_model_sample(const netgen_model* model, size_t count,
                                             const char* params_json, uint64_t seed,
                                             netgen_graphset** out);
NETGEN_API netgen_status netgen_model_save(const netgen_model* model, const char* path);
NETGEN_API netgen_status netgen_model_load(const char* path, netgen_model** out);
NETGEN_API void netgen_model_free(netgen_model* model);
/* "dbn", "depnet" or "ergm"; static storage. */
NETGEN_API const char* netgen_model_kind(const netgen_model* model);
NETGEN_API size_t netgen_model_n_nodes(const netgen_model* model);
/* Caller frees *out with netgen_string_free. */
NETGEN_API netgen_status netgen_model_diagnostics_json(const netgen_model* model, char** out);

/* ---- evaluation ---- */

typedef enum netgen_statistic {
  NETGEN_STAT_IN_DEGREE = 0,
  NETGEN_STAT_CLUSTERING = 1
} netgen_statistic;

typedef struct netgen_perm_result {
  double t_obs;
  double p_value;
  size_t n_permutations;
  double effect_size;
  double mean1;
  double mean2;
  int exhaustive;
} netgen_perm_result;

NETGEN_API netgen_status netgen_statistic_parse(const char* name, netgen_statistic* out);
NETGEN_API netgen_status netgen_permutation_test(const netgen_graphset* set1,
                                                 const netgen_graphset* set2,
                                                 netgen_statistic statistic, size_t n_perm,
                                                 uint64_t seed, netgen_perm_result* out);
NETGEN_API netgen_status netgen_permutation_test_values(const double* values1, size_t n1,
                                                        const double* values2, size_t n2,
                                                        size_t n_perm, uint64_t seed,
                                                        netgen_perm_result* out);
/* Entry-wise mean adjacency, row-major; out_len must be n*n. */
NETGEN_API netgen_status netgen_mean_adjacency(const netgen_graphset* set, double* out,
                                               size_t out_len);
/* Either path may be NULL. */
NETGEN_API netgen_status netgen_mean_adjacency_write(const netgen_graphset* set,
                                                     const char* csv_path,
                                                     const char* pgm_path);

/* ---- experiments ---- */

/* Runs a JSON experiment config. Writes report.json and timings.json to
   the output directory (config "output_dir" unless output_dir is non-NULL)
   and renders the tables and heatmaps next to them. Cell failures are
   recorded in the report and do not make this call fail. */
NETGEN_API netgen_status netgen_experiment_run(const char* config_path, const char* output_dir);
/* Validates a config file without running it. */
NETGEN_API netgen_status netgen_experiment_check(const char* config_path);
NETGEN_API netgen_status netgen_report_render(const char* report_path, const char* output_dir);

#ifdef __cplusplus
}
#endif

#endif /* NETGEN_NETGEN_H */
