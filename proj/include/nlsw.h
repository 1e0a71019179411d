/*
 * nlsw — energy-preserving exponential integrators for the 2D nonlinear
 * Schrodinger equation with wave operator, discretized by the sine
 * pseudo-spectral method.
 *
 * C interface of the shared library: opaque handles + status codes. All
 * array arguments are row-major over the (N-1) x (N-1) interior nodes,
 * index (j,k) -> (j-1)*(N-1) + (k-1) with 1 <= j,k <= N-1.
 */
#ifndef NLSW_H
#define NLSW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlsw_status {
  NLSW_OK = 0,
  NLSW_ERR_INVALID_ARG = 1,
  NLSW_ERR_GRID_MISMATCH = 2,
  NLSW_ERR_REPR_MISMATCH = 3,
  NLSW_ERR_SOLVE_DEGENERATE = 4,  /* SAV-IF update-r denominator vanished */
  NLSW_ERR_NONFINITE = 5,
  NLSW_ERR_SINGULAR_STAGE_SYSTEM = 6,
  NLSW_ERR_IO = 7,
  NLSW_ERR_UNSUPPORTED = 8,
  NLSW_ERR_INTERNAL = 9
} nlsw_status;

const char* nlsw_status_string(nlsw_status status);
/* Detail message of the most recent failure on this thread. */
const char* nlsw_last_error_message(void);
const char* nlsw_version(void);

typedef struct nlsw_grid nlsw_grid;
typedef struct nlsw_solver nlsw_solver;
typedef struct nlsw_table nlsw_table;

/* ---- grid ---------------------------------------------------------- */

nlsw_status nlsw_grid_create(double x_left, double y_left, double extent_x,
                             double extent_y, int resolution,
                             nlsw_grid** out);
void nlsw_grid_destroy(nlsw_grid* grid);
int nlsw_grid_resolution(const nlsw_grid* grid);
/* Number of interior nodes, (N-1)^2. */
size_t nlsw_grid_size(const nlsw_grid* grid);

/* ---- solver -------------------------------------------------------- */

typedef enum nlsw_scheme {
  NLSW_SCHEME_SAVIF = 0,
  NLSW_SCHEME_IFGRK4 = 1,
  NLSW_SCHEME_IFGRK6 = 2
} nlsw_scheme;

typedef enum nlsw_initial_data {
  NLSW_DATA_ZERO = 0,
  NLSW_DATA_EXAMPLE1 = 1, /* sech(x^2+y^2) manufactured-solution data */
  NLSW_DATA_EXAMPLE2 = 2  /* (1+i)(x+y) exp(-10(1-x-y)^2), u1 = 0 */
} nlsw_initial_data;

typedef struct nlsw_solver_options {
  double alpha;              /* nonzero */
  double beta;               /* nonzero */
  double c0;                 /* > 0 */
  nlsw_scheme scheme;
  double tau;                /* > 0 */
  double predictor_tol;      /* <= 0 means default 1e-13 */
  int predictor_max_iter;    /* <= 0 means default: tableau order + 2 */
  int manufactured_source;   /* nonzero: enable the example-1 source term */
  int strict_predictor;      /* nonzero: printed predictor form (no beta) */
} nlsw_solver_options;

void nlsw_solver_options_init(nlsw_solver_options* options);

nlsw_status nlsw_solver_create(const nlsw_grid* grid,
                               const nlsw_solver_options* options,
                               nlsw_solver** out);
void nlsw_solver_destroy(nlsw_solver* solver);

nlsw_status nlsw_solver_set_initial_preset(nlsw_solver* solver,
                                           nlsw_initial_data data);
nlsw_status nlsw_solver_set_initial_arrays(nlsw_solver* solver,
                                           const double* u_re,
                                           const double* u_im,
                                           const double* v_re,
                                           const double* v_im);

nlsw_status nlsw_solver_step(nlsw_solver* solver, long long nsteps);

double nlsw_solver_time(const nlsw_solver* solver);
long long nlsw_solver_step_index(const nlsw_solver* solver);
double nlsw_solver_aux_variable(const nlsw_solver* solver);
double nlsw_solver_energy(const nlsw_solver* solver);
double nlsw_solver_sup_norm(const nlsw_solver* solver);
/* Minimum |4 - tau*b2| seen so far (SAV-IF; large sentinel otherwise). */
double nlsw_solver_min_update_denominator(const nlsw_solver* solver);
int nlsw_solver_last_predictor_iters(const nlsw_solver* solver);

nlsw_status nlsw_solver_get_state(const nlsw_solver* solver, double* u_re,
                                  double* u_im, double* v_re, double* v_im);

/* Checkpoint: header (n, t, r) + rows (j,k,Re u,Im u,Re v,Im v), 17
 * significant digits. SAV-IF saves/loads a `<path>.prev.csv` sidecar with
 * the u^{n-1} level so a resumed trajectory continues bitwise. */
nlsw_status nlsw_solver_save_checkpoint(const nlsw_solver* solver,
                                        const char* path);
nlsw_status nlsw_solver_load_checkpoint(nlsw_solver* solver, const char* path);

/* Debug dump of the current u or v ("u" / "v") as (j,k,re,im) rows. */
nlsw_status nlsw_solver_dump_field(const nlsw_solver* solver,
                                   const char* which, const char* path);

/* ---- experiments ---------------------------------------------------- */

/* Columns: (param, h1_err, l2_err_v, r_err, energy_drift, seconds). */
nlsw_status nlsw_run_temporal_sweep(const nlsw_grid* grid,
                                    const nlsw_solver_options* options,
                                    const double* tau_list, size_t n_tau,
                                    double t_final, nlsw_table** out);
nlsw_status nlsw_run_spatial_sweep(double x_left, double y_left,
                                   double extent_x, double extent_y,
                                   const nlsw_solver_options* options,
                                   const int* resolution_list, size_t n_res,
                                   double t_final, nlsw_table** out);
/* Columns: (n, t, E, RE). */
nlsw_status nlsw_run_energy_series(const nlsw_grid* grid,
                                   const nlsw_solver_options* options,
                                   nlsw_initial_data data, double t_final,
                                   nlsw_table** out);

size_t nlsw_table_rows(const nlsw_table* table);
size_t nlsw_table_cols(const nlsw_table* table);
const char* nlsw_table_column_name(const nlsw_table* table, size_t col);
double nlsw_table_value(const nlsw_table* table, size_t row, size_t col);
/* Fitted log-log slope (sweeps), max RE (energy series); NaN when absent. */
double nlsw_table_stat(const nlsw_table* table, const char* name);
void nlsw_table_destroy(nlsw_table* table);

#ifdef __cplusplus
}
#endif

#endif /* NLSW_H */
