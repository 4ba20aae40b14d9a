#ifndef MVC_MVC_H
#define MVC_MVC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MVC_API __declspec(dllexport)
#else
#define MVC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mvc_status {
  MVC_OK = 0,
  MVC_ERR_INVALID_ARGUMENT = 1,
  MVC_ERR_INVALID_DIMENSION = 2,
  MVC_ERR_DIMENSION_MISMATCH = 3,
  MVC_ERR_BUDGET_EXCEEDED = 4,
  MVC_ERR_INVALID_TOLERANCE = 5,
  MVC_ERR_BOUNDARY_POINT = 6,
  MVC_ERR_DEGENERATE_CELL = 7,
  MVC_ERR_DEGENERATE_SLICE = 8,
  MVC_ERR_EMPTY_DOMAIN = 9,
  MVC_ERR_IO = 10,
  MVC_ERR_INTERNAL = 11
} mvc_status;

typedef enum mvc_verdict {
  MVC_INTERSECT = 0,
  MVC_DISJOINT = 1,
  MVC_UNCERTAIN = 2
} mvc_verdict;

typedef struct mvc_config {
  double alpha;
  double tau;
  double epsilon;
  uint64_t max_cells;
  double slack;
  unsigned workers;
  int record_trace;
} mvc_config;

typedef struct mvc_decision mvc_decision;
typedef struct mvc_bench mvc_bench;

/* Message of the last failed call on this thread; empty if none. */
MVC_API const char* mvc_last_error(void);
MVC_API const char* mvc_status_string(mvc_status status);
MVC_API const char* mvc_verdict_string(mvc_verdict verdict);

MVC_API void mvc_config_init(mvc_config* config);

MVC_API mvc_status mvc_exact_p_value(const int* counts, const double* p, size_t k,
                                     double* out);

MVC_API mvc_status mvc_decide(const int* a, const int* b, size_t k,
                              const mvc_config* config, mvc_decision** out);
MVC_API void mvc_decision_free(mvc_decision* decision);
MVC_API mvc_verdict mvc_decision_verdict(const mvc_decision* decision);
/* Writes k probabilities and returns 1, or returns 0 without a witness. */
MVC_API int mvc_decision_witness(const mvc_decision* decision, double* out);
MVC_API uint64_t mvc_decision_cells(const mvc_decision* decision);
MVC_API uint64_t mvc_decision_unresolved(const mvc_decision* decision);
/* Owned by the decision; valid until it is freed. */
MVC_API const char* mvc_decision_report_json(const mvc_decision* decision);
MVC_API const char* mvc_decision_report_text(const mvc_decision* decision);
MVC_API mvc_status mvc_decision_write_trace(const mvc_decision* decision,
                                            const char* path);

MVC_API mvc_status mvc_oracle_max_min(const int* a, const int* b, size_t k, int resolution,
                                      double* value, double* argmax);
MVC_API mvc_status mvc_wilks_intersect(const int* a, const int* b, size_t k, double alpha,
                                       int resolution, int* out);
MVC_API mvc_status mvc_chisq_quantile(int df, double prob, double* out);

typedef enum mvc_grid_method { MVC_GRID_MVC = 0, MVC_GRID_CHISQ = 1 } mvc_grid_method;

/* Writes the membership CSV to csv_path and, if svg_path is non-null, the
   ternary plot. both_count may be null. */
MVC_API mvc_status mvc_write_grid(const int* a, const int* b, size_t k, double alpha,
                                  int points_per_axis, mvc_grid_method method,
                                  const char* csv_path, const char* svg_path,
                                  uint64_t* both_count);

typedef struct mvc_bench_config {
  size_t count;
  int n_max;
  size_t k;
  uint64_t seed;
  double tau;
  double epsilon;
  uint64_t max_cells;
  unsigned workers;
  int oracle_resolution;
} mvc_bench_config;

MVC_API void mvc_bench_config_init(mvc_bench_config* config);
MVC_API mvc_status mvc_bench_run(const mvc_bench_config* config, mvc_bench** out);
MVC_API void mvc_bench_free(mvc_bench* bench);
MVC_API const char* mvc_bench_table(const mvc_bench* bench);
MVC_API size_t mvc_bench_violations(const mvc_bench* bench);
MVC_API double mvc_bench_wall_time_ms(const mvc_bench* bench);

#ifdef __cplusplus
}
#endif

#endif
