/* dcoplab — dynamic constrained optimization laboratory.
 *
 * C API over the solver core: the 22 G24-family benchmark instances, the
 * differential-evolution engine with six diversity mechanisms, reference
 * optima, performance measures, and the batch experiment driver.
 *
 * All functions return a dcoplab_status; every non-OK return leaves a
 * human-readable detail string in dcoplab_last_error() (thread-local).
 * Objects are opaque handles owned by the caller via the matching _destroy.
 */
#ifndef DCOPLAB_H
#define DCOPLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcoplab_status {
  DCOPLAB_OK = 0,
  DCOPLAB_INVALID_ARGUMENT = 1,
  DCOPLAB_UNKNOWN_INSTANCE = 2,
  DCOPLAB_DOMAIN_ERROR = 3,
  DCOPLAB_BUDGET_EXHAUSTED = 4,
  DCOPLAB_INFEASIBLE_PERIOD = 5,
  DCOPLAB_IO_ERROR = 6,
  DCOPLAB_PARTIAL_FAILURE = 7,
  DCOPLAB_INTERNAL_ERROR = 8
} dcoplab_status;

const char* dcoplab_version(void);
const char* dcoplab_status_string(dcoplab_status status);

/* Detail message for the most recent failing call on this thread. */
const char* dcoplab_last_error(void);

/* ---- benchmark instances -------------------------------------------- */

typedef struct dcoplab_problem dcoplab_problem;

int dcoplab_instance_count(void);
const char* dcoplab_instance_id(int index); /* NULL when out of range */

/* Default dynamics: k=0.5, S=20, f_c=1000, 10 periods. */
dcoplab_status dcoplab_problem_create(const char* id, dcoplab_problem** out);
dcoplab_status dcoplab_problem_create_ex(const char* id, double severity_k,
                                         double severity_s,
                                         int change_frequency, int num_periods,
                                         dcoplab_problem** out);
void dcoplab_problem_destroy(dcoplab_problem* problem);

int dcoplab_problem_dimension(const dcoplab_problem* problem);
int dcoplab_problem_num_constraints(const dcoplab_problem* problem);
int dcoplab_problem_num_periods(const dcoplab_problem* problem);
dcoplab_status dcoplab_problem_bounds(const dcoplab_problem* problem,
                                      double* lower, double* upper);

typedef struct dcoplab_evaluation {
  double objective;
  double total_violation;
  int feasible;
} dcoplab_evaluation;

/* Stateless evaluation at a time index (no budget accounting). */
dcoplab_status dcoplab_problem_evaluate(const dcoplab_problem* problem,
                                        const double* x, int dimension,
                                        int period, dcoplab_evaluation* out);

/* Monte-Carlo feasible fraction of the box at a period. */
dcoplab_status dcoplab_feasible_fraction(const dcoplab_problem* problem,
                                         int period, long samples,
                                         unsigned long long seed, double* out);

/* ---- reference optima ------------------------------------------------ */

typedef struct dcoplab_optima dcoplab_optima;

dcoplab_status dcoplab_compute_optima(const dcoplab_problem* problem,
                                      int grid_resolution,
                                      dcoplab_optima** out);
void dcoplab_optima_destroy(dcoplab_optima* optima);
int dcoplab_optima_num_periods(const dcoplab_optima* optima);
dcoplab_status dcoplab_optima_get(const dcoplab_optima* optima, int period,
                                  double* x1, double* x2, double* f_star);

/* Computes and persists the optima table CSV (plus .checksum side file)
 * for a comma-separated instance list ("all" for the full suite). */
dcoplab_status dcoplab_compute_optima_table(const char* instances,
                                            int grid_resolution,
                                            double severity_k,
                                            double severity_s,
                                            int change_frequency,
                                            int num_periods,
                                            const char* out_file);

/* ---- experiments ------------------------------------------------------ */

typedef struct dcoplab_config dcoplab_config;

dcoplab_status dcoplab_config_create(dcoplab_config** out);
void dcoplab_config_destroy(dcoplab_config* config);

/* Flat `section.key = value` config file. */
dcoplab_status dcoplab_config_load_file(dcoplab_config* config,
                                        const char* path);
/* Single assignment with the same keys as the config file. */
dcoplab_status dcoplab_config_set(dcoplab_config* config, const char* key,
                                  const char* value);

/* Runs the problems x mechanisms x runs cross product into out_dir (NULL:
 * the configured experiment.out). Returns DCOPLAB_PARTIAL_FAILURE when some
 * cells failed; *cells_failed (optional) receives the count. */
dcoplab_status dcoplab_run_experiment(const dcoplab_config* config,
                                      const char* out_dir, int* cells_failed);

/* Regenerates report files from the CSVs already present in dir. */
dcoplab_status dcoplab_render_reports(const char* dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DCOPLAB_H */
