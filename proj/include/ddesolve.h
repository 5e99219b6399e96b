/* C API for the ddesolve library: fixed-step solvers for constant-delay
 * delay differential equations, the built-in problem suite, and the
 * analysis operations (error reports, empirical convergence orders, the
 * zero-stability probe, and the benchmark comparison table).
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning dde_status report DDE_OK on success; on failure a
 * human-readable message is available from dde_last_error_message() (stored
 * per thread) and out-parameters are left null unless documented otherwise.
 */
#ifndef DDESOLVE_H
#define DDESOLVE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DDE_BUILD_SHARED)
#    define DDE_API __declspec(dllexport)
#  else
#    define DDE_API __declspec(dllimport)
#  endif
#else
#  define DDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dde_status {
    DDE_OK = 0,
    DDE_ERR_INVALID_ARGUMENT = 1,
    DDE_ERR_MISALIGNED_DELAY = 2,
    DDE_ERR_DELAY_SHORTER_THAN_STEP = 3,
    DDE_ERR_MISALIGNED_HORIZON = 4,
    DDE_ERR_NONFINITE_STAGE = 5,
    DDE_ERR_NONFINITE = 6,
    DDE_ERR_NEWTON_FAIL = 7,
    DDE_ERR_SINGULAR_JACOBIAN = 8,
    DDE_ERR_INDEX_OUT_OF_RANGE = 9,
    DDE_ERR_NONPOSITIVE_ERROR = 10,
    DDE_ERR_UNKNOWN_PROBLEM = 11,
    DDE_ERR_NO_EXACT_SOLUTION = 12,
    DDE_ERR_INTERNAL = 13
} dde_status;

/* Stable machine-greppable word for a status, e.g. "MISALIGNED_DELAY",
 * "NEWTON_FAIL", "NONFINITE". */
DDE_API const char* dde_status_code_word(dde_status status);

/* Message describing the most recent failure on the calling thread. */
DDE_API const char* dde_last_error_message(void);

DDE_API const char* dde_version(void);

/* ------------------------------------------------------------------ */
/* Problems                                                            */

typedef struct dde_problem dde_problem;

/* Right-hand side f(t, y, delayed) written into dydt (dim values). For
 * delay-free problems `delayed` is a copy of y and should be ignored. */
typedef void (*dde_rhs_fn)(double t, const double* y, const double* delayed,
                           double* dydt, size_t dim, void* user);
/* Vector-valued function of time written into out (dim values). */
typedef void (*dde_time_fn)(double t, double* out, size_t dim, void* user);

/* Overrides applied on top of a built-in problem's defaults; NAN means
 * "keep the default". c applies to rossler-delay only; lambda/mu/tau to
 * linear-test only. */
typedef struct dde_problem_params {
    double horizon;
    double c;
    double lambda;
    double mu;
    double tau;
} dde_problem_params;

DDE_API dde_problem_params dde_problem_params_default(void);

/* Number and names of the built-in problems ("delay-logistic",
 * "example-ode", "rossler-delay", "linear-test"). */
DDE_API size_t dde_problem_name_count(void);
DDE_API const char* dde_problem_name_at(size_t index);

DDE_API dde_status dde_problem_create(const char* name,
                                      const dde_problem_params* params,
                                      dde_problem** out);

/* A user-defined problem from C callbacks. history must be defined on
 * [-delay, 0]; the initial state is history(0). */
DDE_API dde_status dde_problem_create_custom(size_t dim, dde_rhs_fn rhs,
                                             void* rhs_user, double delay,
                                             dde_time_fn history,
                                             void* history_user,
                                             double horizon,
                                             dde_problem** out);

DDE_API void dde_problem_destroy(dde_problem* problem);

DDE_API size_t dde_problem_dim(const dde_problem* problem);
DDE_API double dde_problem_delay(const dde_problem* problem);
DDE_API double dde_problem_horizon(const dde_problem* problem);
DDE_API dde_status dde_problem_set_horizon(dde_problem* problem,
                                           double horizon);
DDE_API const char* dde_problem_name(const dde_problem* problem);
DDE_API const char* dde_problem_notes(const dde_problem* problem);

DDE_API void dde_problem_set_exact(dde_problem* problem, dde_time_fn exact,
                                   void* user);
DDE_API dde_status dde_problem_set_lipschitz_l1(dde_problem* problem,
                                                double l1);
/* Returns 1 and writes *out if the bound is known, else 0. */
DDE_API int dde_problem_lipschitz_l1(const dde_problem* problem, double* out);

DDE_API int dde_problem_has_exact(const dde_problem* problem);
/* Evaluates the closed-form solution at t into out (dim values). */
DDE_API dde_status dde_problem_exact(const dde_problem* problem, double t,
                                     double* out);

/* ------------------------------------------------------------------ */
/* Solver                                                              */

typedef enum dde_method {
    DDE_METHOD_NIM_THETA = 0,
    DDE_METHOD_EXPLICIT_EULER = 1,
    DDE_METHOD_IMPLICIT_THETA_NEWTON = 2
} dde_method;

/* Time argument for the far-node stage evaluations: t_{n+1} (STEP_END, the
 * standard formulation) or t_n (STEP_START, the historical convention of
 * the benchmark table; identical for autonomous systems). */
typedef enum dde_stage_time {
    DDE_STAGE_TIME_STEP_END = 0,
    DDE_STAGE_TIME_STEP_START = 1
} dde_stage_time;

typedef struct dde_solver_config {
    double h;
    double theta;
    int nim_terms;
    dde_method method;
    double newton_tol;
    int newton_max_iter;
    dde_stage_time stage_time;
} dde_solver_config;

DDE_API dde_solver_config dde_solver_config_default(void);
DDE_API dde_solver_config dde_problem_recommended_config(
    const dde_problem* problem);

typedef struct dde_trajectory dde_trajectory;

/* Integrates over [0, horizon]. On DDE_ERR_NONFINITE the finite prefix of
 * the trajectory is still returned through *out for diagnostics. */
DDE_API dde_status dde_solve(const dde_problem* problem,
                             const dde_solver_config* config,
                             dde_trajectory** out);

DDE_API void dde_trajectory_destroy(dde_trajectory* traj);
DDE_API size_t dde_trajectory_node_count(const dde_trajectory* traj);
DDE_API size_t dde_trajectory_dim(const dde_trajectory* traj);
DDE_API double dde_trajectory_h(const dde_trajectory* traj);
DDE_API double dde_trajectory_time(const dde_trajectory* traj, size_t n);
/* Pointer to node n's state (dim values), valid until the trajectory is
 * destroyed. */
DDE_API const double* dde_trajectory_state(const dde_trajectory* traj,
                                           size_t n);
/* Row-major node data, node_count*dim values. */
DDE_API const double* dde_trajectory_data(const dde_trajectory* traj);

/* ------------------------------------------------------------------ */
/* Analysis                                                            */

typedef struct dde_error_report dde_error_report;

/* Per-node sup-norm error against the problem's closed form. */
DDE_API dde_status dde_error_vs_exact(const dde_trajectory* traj,
                                      const dde_problem* problem,
                                      dde_error_report** out);
/* Per-node sup-norm error against a finer reference trajectory whose grid
 * contains this one. */
DDE_API dde_status dde_error_vs_reference(const dde_trajectory* traj,
                                          const dde_trajectory* reference,
                                          dde_error_report** out);
DDE_API void dde_error_report_destroy(dde_error_report* report);
DDE_API size_t dde_error_report_len(const dde_error_report* report);
DDE_API double dde_error_report_time(const dde_error_report* report,
                                     size_t i);
DDE_API double dde_error_report_value(const dde_error_report* report,
                                      size_t i);
DDE_API double dde_error_report_max(const dde_error_report* report);

/* Newton-solved implicit theta = 1/2 run at fine_h; the oracle for
 * problems without a closed form. */
DDE_API dde_status dde_reference_solution(const dde_problem* problem,
                                          double fine_h,
                                          dde_trajectory** out);

typedef enum dde_order_oracle {
    DDE_ORACLE_EXACT = 0,
    DDE_ORACLE_REFERENCE = 1
} dde_order_oracle;

typedef struct dde_order_estimate dde_order_estimate;

/* Empirical convergence order from solves at h_list (descending halvings).
 * reference_h is used only with DDE_ORACLE_REFERENCE. */
DDE_API dde_status dde_empirical_order(const dde_problem* problem,
                                       const dde_solver_config* config,
                                       const double* h_list, size_t h_count,
                                       dde_order_oracle oracle,
                                       double reference_h,
                                       dde_order_estimate** out);
DDE_API void dde_order_estimate_destroy(dde_order_estimate* estimate);
DDE_API size_t dde_order_estimate_len(const dde_order_estimate* estimate);
DDE_API double dde_order_estimate_h(const dde_order_estimate* estimate,
                                    size_t i);
DDE_API double dde_order_estimate_error(const dde_order_estimate* estimate,
                                        size_t i);
/* Order of the pair (h_i, h_{i+1}); valid for i < len - 1. */
DDE_API double dde_order_estimate_order(const dde_order_estimate* estimate,
                                        size_t i);

typedef struct dde_stability_report {
    double epsilon0;
    double observed_max_dev;
    double bound;
} dde_stability_report;

/* Two solves, nominal and with history(0) shifted by epsilon0; reports the
 * max deviation and the bound exp(horizon*L1)*epsilon0. Requires the
 * problem's L1 bound. */
DDE_API dde_status dde_stability_probe(const dde_problem* problem,
                                       const dde_solver_config* config,
                                       double epsilon0,
                                       dde_stability_report* out);

/* ------------------------------------------------------------------ */
/* Benchmark table                                                     */

typedef struct dde_table1_row {
    double t;
    double s1; /* backward Euler (Newton) */
    double s2; /* 3-term iterated theta = 1 */
    double s3; /* 4-term iterated theta = 1 */
    double exact;
    double e1;
    double e2;
    double e3;
} dde_table1_row;

typedef struct dde_table dde_table;

/* The canonical comparison table on the exponential relaxation problem at
 * step h (canonically 0.01), nodes {0, 0.01..0.06, 0.1, 0.2, 0.3, 0.4,
 * 0.5} that land on the grid. */
DDE_API dde_status dde_table1(double h, dde_table** out);
DDE_API void dde_table_destroy(dde_table* table);
DDE_API size_t dde_table_row_count(const dde_table* table);
DDE_API const dde_table1_row* dde_table_rows(const dde_table* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DDESOLVE_H */
