#ifndef SBPP_H
#define SBPP_H

#include <stdint.h>

#if defined(SBPP_BUILDING)
#define SBPP_API __attribute__((visibility("default")))
#else
#define SBPP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SBPP_OK = 0,
  SBPP_E_INVALID_ARGUMENT = 1,
  SBPP_E_DIMENSION = 2,
  SBPP_E_NOT_SPD = 3,
  SBPP_E_ILL_CONDITIONED = 4,
  SBPP_E_CONSTRAINT = 5,
  SBPP_E_IO = 6,
  SBPP_E_CONFIG = 7,
  SBPP_E_INTERNAL = 8,
  SBPP_E_NULL = 9
} sbpp_status;

/* Message of the last failing call on this thread; empty after success. */
SBPP_API const char* sbpp_last_error(void);
SBPP_API const char* sbpp_version(void);

/* All matrices cross the boundary dense and row-major. */

/* ---- 1D SBP operators ---- */
typedef struct sbpp_operator sbpp_operator;

/* closure: 0 standard, 1 wide (order 2 only). */
SBPP_API sbpp_status sbpp_operator_create(int order, int n, int closure, sbpp_operator** out);
SBPP_API void sbpp_operator_destroy(sbpp_operator* op);
SBPP_API int sbpp_operator_points(const sbpp_operator* op);
SBPP_API int sbpp_operator_boundary_order(const sbpp_operator* op);
SBPP_API int sbpp_min_intervals(int order, int closure);
/* points x points */
SBPP_API sbpp_status sbpp_operator_D(const sbpp_operator* op, double* out);
SBPP_API sbpp_status sbpp_operator_H(const sbpp_operator* op, double* out);

/* ---- pseudoinverse ---- */
/* T is m x n; H1 (n x n) and H2 (m x m) may be NULL for the identity. out is n x m. */
SBPP_API sbpp_status sbpp_pinv(int m, int n, const double* T, const double* H1, const double* H2, double* out);
/* Largest relative weighted Penrose residual of S (n x m) for T. */
SBPP_API sbpp_status sbpp_penrose_residual(int m, int n, const double* T, const double* H1, const double* H2,
                                           const double* S, double* residual);

/* ---- verification suites ---- */
typedef struct sbpp_report sbpp_report;

/* only: comma separated suite names or NULL for all. perturb_h != 0 is a negative control. */
SBPP_API sbpp_status sbpp_verify(uint64_t seed, const char* only, double perturb_h, sbpp_report** out);
SBPP_API void sbpp_report_destroy(sbpp_report* r);
SBPP_API int sbpp_report_count(const sbpp_report* r);
SBPP_API int sbpp_report_failures(const sbpp_report* r);
SBPP_API sbpp_status sbpp_report_get(const sbpp_report* r, int i, const char** suite, const char** name,
                                     double* defect, double* tolerance, int* pass);
SBPP_API int sbpp_suite_count(void);
SBPP_API const char* sbpp_suite_name(int i);

/* ---- time traces (energy histories) ---- */
typedef struct sbpp_trace sbpp_trace;

SBPP_API void sbpp_trace_destroy(sbpp_trace* tr);
SBPP_API int sbpp_trace_length(const sbpp_trace* tr);
/* defect: max |L v| for advection, NaN when not recorded. */
SBPP_API sbpp_status sbpp_trace_get(const sbpp_trace* tr, int i, double* t, double* energy, double* defect);
/* Advection: largest per-step energy increase over E(0). Maxwell: E(T)/E(0) - 1. */
SBPP_API double sbpp_trace_summary(const sbpp_trace* tr);
SBPP_API int sbpp_trace_swap_count(const sbpp_trace* tr);
SBPP_API double sbpp_trace_swap_time(const sbpp_trace* tr, int i);
SBPP_API double sbpp_trace_dt(const sbpp_trace* tr);

/* ---- Maxwell ---- */
typedef struct {
  int order;
  int n; /* intervals per block, 2 x 2 blocks */
  double eps;
  double mu;
  double alpha;         /* sinusoidal mapping amplitude */
  int discrete_metrics; /* 1 discrete, 0 analytic */
  const char* grid_file; /* NULL or "" for the mapping */
} sbpp_maxwell_config;

typedef struct sbpp_maxwell sbpp_maxwell;

SBPP_API void sbpp_maxwell_config_default(sbpp_maxwell_config* cfg);
SBPP_API sbpp_status sbpp_maxwell_create(const sbpp_maxwell_config* cfg, sbpp_maxwell** out);
SBPP_API void sbpp_maxwell_destroy(sbpp_maxwell* m);
SBPP_API int sbpp_maxwell_dof(const sbpp_maxwell* m);
SBPP_API int sbpp_maxwell_points(const sbpp_maxwell* m);
SBPP_API double sbpp_maxwell_hmin(const sbpp_maxwell* m);
/* re, im: dof entries each. full = 1 uses the dense eigensolver on Q itself. */
SBPP_API sbpp_status sbpp_maxwell_spectrum(const sbpp_maxwell* m, int full, double* re, double* im);
SBPP_API sbpp_status sbpp_maxwell_energy(const sbpp_maxwell* m, double t_final, uint64_t seed, int smooth,
                                         int record_every, sbpp_trace** out);
SBPP_API sbpp_status sbpp_maxwell_manufactured(const sbpp_maxwell* m, double t_final, double* error, int* steps,
                                               double* bc_defect);

/* ---- convergence tables ---- */
typedef struct {
  int order;
  int n;
  int points;
  int dof;
  double error;
  double log10_error;
  double rate;
  int has_rate;
  int skipped;
  double seconds;
  const char* note;
} sbpp_convergence_row;

typedef struct sbpp_table sbpp_table;

SBPP_API sbpp_status sbpp_convergence(const sbpp_maxwell_config* base, const int* orders, int n_orders,
                                      const int* n_list, int n_count, double t_final, sbpp_table** out);
SBPP_API void sbpp_table_destroy(sbpp_table* t);
SBPP_API int sbpp_table_rows(const sbpp_table* t);
SBPP_API sbpp_status sbpp_table_get(const sbpp_table* t, int i, sbpp_convergence_row* row);
/* Writes up to cap rates from the last `window` usable rows of the order; count receives the number. */
SBPP_API sbpp_status sbpp_table_asymptotic(const sbpp_table* t, int order, int window, double* rates, int cap,
                                           int* count);

/* ---- advection demo ---- */
typedef struct {
  int multiblock; /* 0 single block, 1 two-block skew form */
  int order;
  int n;
  double t_final;
  double cfl;
  int pattern; /* 0 zero, 1 positive, 2 sign flip */
  double switch_time;
} sbpp_advection_config;

SBPP_API void sbpp_advection_config_default(sbpp_advection_config* cfg);
SBPP_API sbpp_status sbpp_advection(const sbpp_advection_config* cfg, sbpp_trace** out);

#ifdef __cplusplus
}
#endif

#endif
