/*
 * C interface to the warm urn-network toolkit.
 *
 * Objects are opaque handles created by warm_*_create / builder calls and
 * released by the matching *_free. Every fallible call returns a
 * warm_status; on failure warm_last_error() describes the problem (the
 * message is per-thread and valid until the next failing call on that
 * thread). Output arrays are caller-owned; functions that return a count
 * through `len` fail with WARM_ERR_INVALID_ARGUMENT if `cap` is too small,
 * after storing the required size in `len`.
 */
#ifndef WARM_WARM_H
#define WARM_WARM_H

#include <stddef.h>
#include <stdint.h>

#if defined(WARM_BUILDING_LIBRARY)
#define WARM_API __attribute__((visibility("default")))
#else
#define WARM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum warm_status {
  WARM_OK = 0,
  WARM_ERR_INVALID_ARGUMENT = 1,
  WARM_ERR_PARSE = 2,
  WARM_ERR_NOT_CONVERGED = 3,
  WARM_ERR_IO = 4,
  WARM_ERR_RESAMPLE_CAP = 5,
  WARM_ERR_INTERNAL = 6
} warm_status;

typedef struct warm_graph warm_graph;
typedef struct warm_sim warm_sim;
typedef struct warm_series warm_series;

WARM_API const char* warm_version(void);
WARM_API const char* warm_last_error(void);
WARM_API const char* warm_status_name(warm_status status);
/* Releases strings returned through char** out-parameters. */
WARM_API void warm_string_free(char* s);

/* ---- graphs ---------------------------------------------------------- */

WARM_API warm_status warm_graph_cycle(size_t n, warm_graph** out);
WARM_API warm_status warm_graph_torus(size_t dim, size_t side, warm_graph** out);
WARM_API warm_status warm_graph_path(size_t edges, warm_graph** out);
WARM_API warm_status warm_graph_star(size_t leaves, warm_graph** out);
WARM_API warm_status warm_graph_random_regular(size_t n, size_t degree, uint64_t seed, warm_graph** out);
WARM_API warm_status warm_graph_from_edge_list(const char* text, warm_graph** out);
WARM_API warm_status warm_graph_from_file(const char* path, warm_graph** out);
WARM_API void warm_graph_free(warm_graph* g);

WARM_API size_t warm_graph_vertex_count(const warm_graph* g);
WARM_API size_t warm_graph_edge_count(const warm_graph* g);
WARM_API size_t warm_graph_max_degree(const warm_graph* g);
WARM_API int warm_graph_is_regular(const warm_graph* g);
WARM_API warm_status warm_graph_edge(const warm_graph* g, size_t e, size_t* u, size_t* v);
WARM_API warm_status warm_graph_edge_neighborhood(const warm_graph* g, size_t e, size_t* out, size_t cap,
                                                  size_t* len);
/* JSON object {vertex_count, edge_count, max_degree, regular}; free with warm_string_free. */
WARM_API warm_status warm_graph_summary_json(const warm_graph* g, char** out);

/* ---- dynamics -------------------------------------------------------- */

typedef struct warm_sim_config {
  double alpha;
  double t_max;
  uint64_t seed;
  const double* snapshot_times; /* strictly increasing in (0, t_max]; may be NULL */
  size_t snapshot_count;
  int allow_strong_alpha;
  int use_cache;
} warm_sim_config;

WARM_API warm_status warm_schedule_dyadic(double t0, double ratio, double t_max, double* out, size_t cap,
                                          size_t* len);
/* Probabilities over the incident edges of `vertex`, in incidence order. */
WARM_API warm_status warm_selection_probabilities(const warm_graph* g, const int64_t* weights, size_t n,
                                                  size_t vertex, double alpha, double* out, size_t cap,
                                                  size_t* len);

/* The simulation keeps its own reference to the graph. */
WARM_API warm_status warm_sim_create(const warm_graph* g, const warm_sim_config* cfg, warm_sim** out);
WARM_API warm_status warm_sim_resume(const warm_graph* g, const char* checkpoint_path, warm_sim** out);
WARM_API void warm_sim_free(warm_sim* sim);

/* edge is set to -1 when the fired vertex is isolated. */
WARM_API warm_status warm_sim_step(warm_sim* sim, double* dt, size_t* vertex, int64_t* edge);
WARM_API warm_status warm_sim_run_until(warm_sim* sim, double t_stop);
WARM_API warm_status warm_sim_run(warm_sim* sim);
WARM_API double warm_sim_time(const warm_sim* sim);
WARM_API uint64_t warm_sim_event_count(const warm_sim* sim);
WARM_API warm_status warm_sim_weights(const warm_sim* sim, int64_t* out, size_t cap);
WARM_API warm_status warm_sim_save_checkpoint(const warm_sim* sim, const char* path);
WARM_API warm_status warm_sim_write_snapshots_csv(const warm_sim* sim, const char* path);
/* Copy of the snapshots recorded so far. */
WARM_API warm_status warm_sim_series(const warm_sim* sim, warm_series** out);

/* ---- snapshot series ------------------------------------------------- */

WARM_API warm_status warm_series_read_csv(const char* path, warm_series** out);
WARM_API void warm_series_free(warm_series* s);
WARM_API size_t warm_series_size(const warm_series* s);
WARM_API size_t warm_series_edge_count(const warm_series* s);
WARM_API warm_status warm_series_snapshot(const warm_series* s, size_t j, double* t, double* x, size_t cap);

/* ---- equilibrium ----------------------------------------------------- */

WARM_API warm_status warm_apply_T(const warm_graph* g, double alpha, const double* mu, double* out, size_t n);
WARM_API warm_status warm_compact_set_bounds(size_t max_degree, double alpha, double* lower, double* upper);

typedef struct warm_solver_options {
  double tol;
  size_t max_iter;
  double damping;
  size_t restarts;
  uint64_t seed;
  double agreement_tol;
} warm_solver_options;

typedef struct warm_solver_report {
  size_t iterations;
  double residual;
  int in_compact_set;
  size_t restarts_run;
  double restart_max_distance;
  int restarts_agree;
} warm_solver_report;

/* tol 1e-12, max_iter 1e5, damping 0.5, no restarts. */
WARM_API void warm_solver_options_default(warm_solver_options* opts);
/* On WARM_ERR_NOT_CONVERGED, mu_out holds the last iterate and report the
 * last residual and iteration count. */
WARM_API warm_status warm_solve_equilibrium(const warm_graph* g, double alpha, const warm_solver_options* opts,
                                            double* mu_out, size_t n, warm_solver_report* report);
WARM_API warm_status warm_verify_equilibrium(const warm_graph* g, double alpha, const double* mu, size_t n,
                                             double tol, int* ok, double* residual);
WARM_API warm_status warm_read_mu_csv(const char* path, double* out, size_t cap, size_t* len);
WARM_API warm_status warm_write_mu_csv(const char* path, const double* mu, size_t n);

/* ---- analysis -------------------------------------------------------- */

WARM_API warm_status warm_bootstrap_f(double r, double s, double alpha, size_t delta, double* out);
WARM_API warm_status warm_auto_bracket(double alpha, size_t delta, double* a1, double* b1);
WARM_API warm_status warm_bootstrap_sequence(double alpha, size_t delta, double a1, double b1, size_t max_iter,
                                             double tol, double* a_out, double* b_out, size_t cap, size_t* len,
                                             int* converged);
WARM_API warm_status warm_improvement_check(double a, double b, double alpha, size_t delta, int* out);
WARM_API warm_status warm_lower_threshold_check(double a, double alpha, size_t delta, int* out);
WARM_API warm_status warm_a_kl(unsigned k, unsigned l, double alpha, size_t delta, double* out);

typedef enum warm_grid_kind { WARM_GRID_IMPROVEMENT = 0, WARM_GRID_LOWER_THRESHOLD = 1 } warm_grid_kind;

typedef struct warm_grid_result {
  size_t points;
  size_t passed;
  int has_witness; /* first failing point, if any */
  double witness_a;
  double witness_b;
} warm_grid_result;

/* Per-point arrays may all be NULL; otherwise each needs `cap` slots. */
WARM_API warm_status warm_grid_check(warm_grid_kind kind, size_t delta, double alpha, double step, double* a,
                                     double* b, int* pass, size_t cap, size_t* len, warm_grid_result* result);

WARM_API warm_status warm_estimate_limits(const warm_series* s, double window_fraction, double* x_minus,
                                          double* x_plus, size_t n, double* t_lo, double* t_hi);
/* unstable_out needs n slots. */
WARM_API warm_status warm_classify_stability(const warm_graph* g, const double* x_minus, const double* mu, size_t n,
                                             double delta_threshold, size_t* unstable_out, size_t* count);
/* sizes_out needs `count` slots. */
WARM_API warm_status warm_unstable_components(const warm_graph* g, const size_t* unstable, size_t count,
                                              size_t* sizes_out, size_t* n_components);
WARM_API warm_status warm_convergence_report(const warm_series* s, const double* mu, size_t n, double* out,
                                             size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* WARM_WARM_H */
