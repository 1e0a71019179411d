#include "nlsw.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nlsw/experiments.hpp"

namespace {

thread_local std::string g_last_error;

nlsw_status code_of(const nlsw::Error& e) {
  switch (e.code()) {
    case nlsw::ErrorCode::InvalidArgument: return NLSW_ERR_INVALID_ARG;
    case nlsw::ErrorCode::GridMismatch: return NLSW_ERR_GRID_MISMATCH;
    case nlsw::ErrorCode::ReprMismatch: return NLSW_ERR_REPR_MISMATCH;
    case nlsw::ErrorCode::SolveDegenerate: return NLSW_ERR_SOLVE_DEGENERATE;
    case nlsw::ErrorCode::NonFinite: return NLSW_ERR_NONFINITE;
    case nlsw::ErrorCode::SingularStageSystem:
      return NLSW_ERR_SINGULAR_STAGE_SYSTEM;
    case nlsw::ErrorCode::Io: return NLSW_ERR_IO;
    case nlsw::ErrorCode::Unsupported: return NLSW_ERR_UNSUPPORTED;
  }
  return NLSW_ERR_INTERNAL;
}

template <typename Fn>
nlsw_status guarded(Fn&& fn) {
  try {
    fn();
    return NLSW_OK;
  } catch (const nlsw::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLSW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NLSW_ERR_INTERNAL;
  }
}

nlsw_status invalid(const char* message) {
  g_last_error = message;
  return NLSW_ERR_INVALID_ARG;
}

nlsw::SchemeOptions scheme_of(const nlsw_solver_options* options) {
  nlsw::SchemeOptions scheme;
  switch (options->scheme) {
    case NLSW_SCHEME_SAVIF: scheme.scheme = nlsw::Scheme::SavIf; break;
    case NLSW_SCHEME_IFGRK4: scheme.scheme = nlsw::Scheme::Ifgrk4; break;
    case NLSW_SCHEME_IFGRK6: scheme.scheme = nlsw::Scheme::Ifgrk6; break;
    default:
      nlsw::fail(nlsw::ErrorCode::InvalidArgument, "unknown scheme tag");
  }
  if (options->predictor_tol > 0.0)
    scheme.ifrk.predictor_tol = options->predictor_tol;
  if (options->predictor_max_iter > 0)
    scheme.ifrk.predictor_max_iter = options->predictor_max_iter;
  scheme.ifrk.strict_predictor = options->strict_predictor != 0;
  return scheme;
}

}  // namespace

struct nlsw_grid {
  std::shared_ptr<const nlsw::Grid2D> grid;
};

struct nlsw_solver {
  nlsw::ProblemParams params;
  nlsw::SchemeOptions scheme;
  double tau = 0.0;
  nlsw::SavState state;
  long long step_index = 0;
  std::unique_ptr<nlsw::Integrator> stepper;

  nlsw_solver(nlsw::ProblemParams p, nlsw::SchemeOptions s, double dt)
      : params(std::move(p)),
        scheme(s),
        tau(dt),
        state{nlsw::Field::zeros(params.grid, nlsw::Repr::Physical),
              nlsw::Field::zeros(params.grid, nlsw::Repr::Physical),
              nlsw::r_init(nlsw::Field::zeros(params.grid, nlsw::Repr::Physical),
                           params.c0),
              0.0} {
    stepper = nlsw::make_integrator(params, tau, scheme);
  }
};

struct nlsw_table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> stats;
};

namespace {

nlsw::ProblemParams params_of(std::shared_ptr<const nlsw::Grid2D> grid,
                              const nlsw_solver_options* options) {
  nlsw::ProblemParams params;
  params.alpha = options->alpha;
  params.beta = options->beta;
  params.c0 = options->c0;
  params.grid = std::move(grid);
  return params;
}

nlsw_table* table_from_sweep(const nlsw::SweepResult& result) {
  auto* table = new nlsw_table;
  table->columns = {"param",  "h1_err",       "l2_err_v",
                    "r_err",  "energy_drift", "seconds"};
  for (const nlsw::SweepRow& row : result.rows)
    table->rows.push_back({row.param, row.h1_err, row.l2_err_v, row.r_err,
                           row.energy_drift, row.seconds});
  table->stats["slope"] = result.slope;
  return table;
}

}  // namespace

extern "C" {

const char* nlsw_status_string(nlsw_status status) {
  switch (status) {
    case NLSW_OK: return "ok";
    case NLSW_ERR_INVALID_ARG: return "invalid argument";
    case NLSW_ERR_GRID_MISMATCH: return "grid mismatch";
    case NLSW_ERR_REPR_MISMATCH: return "representation mismatch";
    case NLSW_ERR_SOLVE_DEGENERATE: return "update-r denominator degenerate";
    case NLSW_ERR_NONFINITE: return "non-finite values";
    case NLSW_ERR_SINGULAR_STAGE_SYSTEM: return "singular stage system";
    case NLSW_ERR_IO: return "i/o failure";
    case NLSW_ERR_UNSUPPORTED: return "unsupported";
    case NLSW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* nlsw_last_error_message(void) { return g_last_error.c_str(); }

const char* nlsw_version(void) { return "0.1.0"; }

nlsw_status nlsw_grid_create(double x_left, double y_left, double extent_x,
                             double extent_y, int resolution,
                             nlsw_grid** out) {
  if (!out) return invalid("nlsw_grid_create: out is null");
  *out = nullptr;
  return guarded([&] {
    *out = new nlsw_grid{
        nlsw::make_grid(x_left, y_left, extent_x, extent_y, resolution)};
  });
}

void nlsw_grid_destroy(nlsw_grid* grid) { delete grid; }

int nlsw_grid_resolution(const nlsw_grid* grid) {
  return grid ? grid->grid->n() : 0;
}

size_t nlsw_grid_size(const nlsw_grid* grid) {
  return grid ? grid->grid->size() : 0;
}

void nlsw_solver_options_init(nlsw_solver_options* options) {
  if (!options) return;
  options->alpha = 1.0;
  options->beta = 1.0;
  options->c0 = 1.0;
  options->scheme = NLSW_SCHEME_SAVIF;
  options->tau = 0.01;
  options->predictor_tol = 0.0;
  options->predictor_max_iter = 0;
  options->manufactured_source = 0;
  options->strict_predictor = 0;
}

nlsw_status nlsw_solver_create(const nlsw_grid* grid,
                               const nlsw_solver_options* options,
                               nlsw_solver** out) {
  if (!grid || !options || !out)
    return invalid("nlsw_solver_create: null argument");
  *out = nullptr;
  return guarded([&] {
    nlsw::ProblemParams params;
    params.alpha = options->alpha;
    params.beta = options->beta;
    params.c0 = options->c0;
    params.grid = grid->grid;
    if (options->manufactured_source)
      params.source = nlsw::example1_data(options->alpha, options->beta).source;
    *out = new nlsw_solver(std::move(params), scheme_of(options), options->tau);
  });
}

void nlsw_solver_destroy(nlsw_solver* solver) { delete solver; }

nlsw_status nlsw_solver_set_initial_preset(nlsw_solver* solver,
                                           nlsw_initial_data data) {
  if (!solver) return invalid("set_initial_preset: solver is null");
  return guarded([&] {
    nlsw::ProblemData pd;
    switch (data) {
      case NLSW_DATA_ZERO:
        pd.u0 = [](double, double) { return nlsw::Complex(0.0, 0.0); };
        pd.u1 = pd.u0;
        break;
      case NLSW_DATA_EXAMPLE1:
        pd = nlsw::example1_data(solver->params.alpha, solver->params.beta);
        break;
      case NLSW_DATA_EXAMPLE2:
        pd = nlsw::example2_data();
        break;
      default:
        nlsw::fail(nlsw::ErrorCode::InvalidArgument, "unknown data preset");
    }
    solver->state = nlsw::init_state(solver->params, pd.u0, pd.u1);
    solver->step_index = 0;
    solver->stepper = nlsw::make_integrator(solver->params, solver->tau,
                                            solver->scheme);
  });
}

nlsw_status nlsw_solver_set_initial_arrays(nlsw_solver* solver,
                                           const double* u_re,
                                           const double* u_im,
                                           const double* v_re,
                                           const double* v_im) {
  if (!solver || !u_re || !u_im || !v_re || !v_im)
    return invalid("set_initial_arrays: null argument");
  return guarded([&] {
    nlsw::Field u(solver->params.grid, nlsw::Repr::Physical);
    nlsw::Field v(solver->params.grid, nlsw::Repr::Physical);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u.data()[i] = nlsw::Complex(u_re[i], u_im[i]);
      v.data()[i] = nlsw::Complex(v_re[i], v_im[i]);
    }
    nlsw::require(u.all_finite() && v.all_finite(),
                  nlsw::ErrorCode::NonFinite,
                  "initial arrays contain non-finite values");
    solver->state = nlsw::SavState{std::move(u), std::move(v), 0.0, 0.0};
    solver->state.r = nlsw::r_init(solver->state.u, solver->params.c0);
    solver->step_index = 0;
    solver->stepper = nlsw::make_integrator(solver->params, solver->tau,
                                            solver->scheme);
  });
}

nlsw_status nlsw_solver_step(nlsw_solver* solver, long long nsteps) {
  if (!solver) return invalid("step: solver is null");
  if (nsteps < 1) return invalid("step: nsteps must be >= 1");
  return guarded([&] {
    nlsw::SavState state = solver->state.to(nlsw::Repr::Spectral);
    for (long long i = 0; i < nsteps; ++i) {
      state = solver->stepper->step(state);
      ++solver->step_index;
    }
    solver->state = std::move(state);
  });
}

double nlsw_solver_time(const nlsw_solver* solver) {
  return solver ? solver->state.t : 0.0;
}

long long nlsw_solver_step_index(const nlsw_solver* solver) {
  return solver ? solver->step_index : 0;
}

double nlsw_solver_aux_variable(const nlsw_solver* solver) {
  return solver ? solver->state.r : 0.0;
}

double nlsw_solver_energy(const nlsw_solver* solver) {
  if (!solver) return 0.0;
  return nlsw::discrete_energy(solver->state, solver->params);
}

double nlsw_solver_sup_norm(const nlsw_solver* solver) {
  if (!solver) return 0.0;
  return nlsw::norm_linf(solver->state.u);
}

double nlsw_solver_min_update_denominator(const nlsw_solver* solver) {
  return solver ? solver->stepper->min_update_denominator()
                : nlsw::Integrator::kNoDenominator;
}

int nlsw_solver_last_predictor_iters(const nlsw_solver* solver) {
  return solver ? solver->stepper->last_predictor_iters() : 0;
}

nlsw_status nlsw_solver_get_state(const nlsw_solver* solver, double* u_re,
                                  double* u_im, double* v_re, double* v_im) {
  if (!solver || !u_re || !u_im || !v_re || !v_im)
    return invalid("get_state: null argument");
  return guarded([&] {
    const nlsw::Field u = solver->state.u.to(nlsw::Repr::Physical);
    const nlsw::Field v = solver->state.v.to(nlsw::Repr::Physical);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u_re[i] = u.data()[i].real();
      u_im[i] = u.data()[i].imag();
      v_re[i] = v.data()[i].real();
      v_im[i] = v.data()[i].imag();
    }
  });
}

nlsw_status nlsw_solver_save_checkpoint(const nlsw_solver* solver,
                                        const char* path) {
  if (!solver || !path) return invalid("save_checkpoint: null argument");
  return guarded([&] {
    nlsw::save_state_csv(solver->state, solver->step_index, path);
    if (auto* savif = dynamic_cast<nlsw::SavIfStepper*>(solver->stepper.get());
        savif && savif->previous_u()) {
      nlsw::field_dump_csv(savif->previous_u()->to(nlsw::Repr::Physical),
                           std::string(path) + ".prev.csv");
    }
  });
}

nlsw_status nlsw_solver_load_checkpoint(nlsw_solver* solver,
                                        const char* path) {
  if (!solver || !path) return invalid("load_checkpoint: null argument");
  return guarded([&] {
    nlsw::LoadedState loaded =
        nlsw::load_state_csv(solver->params.grid, path);
    solver->state = std::move(loaded.state);
    solver->step_index = loaded.step_index;
    solver->stepper = nlsw::make_integrator(solver->params, solver->tau,
                                            solver->scheme);
    if (auto* savif =
            dynamic_cast<nlsw::SavIfStepper*>(solver->stepper.get())) {
      const std::string prev_path = std::string(path) + ".prev.csv";
      if (std::FILE* probe = std::fopen(prev_path.c_str(), "r")) {
        std::fclose(probe);
        savif->set_previous_u(nlsw::field_load_csv(
            solver->params.grid, nlsw::Repr::Physical, prev_path));
      }
    }
  });
}

nlsw_status nlsw_solver_dump_field(const nlsw_solver* solver,
                                   const char* which, const char* path) {
  if (!solver || !which || !path) return invalid("dump_field: null argument");
  return guarded([&] {
    if (std::strcmp(which, "u") == 0)
      nlsw::field_dump_csv(solver->state.u.to(nlsw::Repr::Physical), path);
    else if (std::strcmp(which, "v") == 0)
      nlsw::field_dump_csv(solver->state.v.to(nlsw::Repr::Physical), path);
    else
      nlsw::fail(nlsw::ErrorCode::InvalidArgument,
                 "dump_field: which must be \"u\" or \"v\"");
  });
}

nlsw_status nlsw_run_temporal_sweep(const nlsw_grid* grid,
                                    const nlsw_solver_options* options,
                                    const double* tau_list, size_t n_tau,
                                    double t_final, nlsw_table** out) {
  if (!grid || !options || !tau_list || !out || n_tau == 0)
    return invalid("temporal_sweep: null/empty argument");
  *out = nullptr;
  return guarded([&] {
    nlsw::SweepResult result = nlsw::run_temporal_sweep(
        params_of(grid->grid, options), scheme_of(options),
        std::vector<double>(tau_list, tau_list + n_tau), t_final);
    *out = table_from_sweep(result);
  });
}

nlsw_status nlsw_run_spatial_sweep(double x_left, double y_left,
                                   double extent_x, double extent_y,
                                   const nlsw_solver_options* options,
                                   const int* resolution_list, size_t n_res,
                                   double t_final, nlsw_table** out) {
  if (!options || !resolution_list || !out || n_res == 0)
    return invalid("spatial_sweep: null/empty argument");
  *out = nullptr;
  return guarded([&] {
    int n0 = resolution_list[0];
    nlsw::ProblemParams base = params_of(
        nlsw::make_grid(x_left, y_left, extent_x, extent_y, n0), options);
    nlsw::SweepResult result = nlsw::run_spatial_sweep(
        base, scheme_of(options),
        std::vector<int>(resolution_list, resolution_list + n_res),
        options->tau, t_final);
    *out = table_from_sweep(result);
  });
}

nlsw_status nlsw_run_energy_series(const nlsw_grid* grid,
                                   const nlsw_solver_options* options,
                                   nlsw_initial_data data, double t_final,
                                   nlsw_table** out) {
  if (!grid || !options || !out)
    return invalid("energy_series: null argument");
  *out = nullptr;
  return guarded([&] {
    nlsw::ProblemData pd;
    switch (data) {
      case NLSW_DATA_ZERO:
        nlsw::fail(nlsw::ErrorCode::InvalidArgument,
                   "energy_series: zero data has no well-defined RE");
      case NLSW_DATA_EXAMPLE1:
        pd = nlsw::example1_data(options->alpha, options->beta);
        pd.source = nullptr;  // conservation runs are source-free
        break;
      case NLSW_DATA_EXAMPLE2:
        pd = nlsw::example2_data();
        break;
      default:
        nlsw::fail(nlsw::ErrorCode::InvalidArgument, "unknown data preset");
    }
    nlsw::EnergySeries series = nlsw::run_energy_experiment(
        params_of(grid->grid, options), pd, scheme_of(options), options->tau,
        t_final);
    auto* table = new nlsw_table;
    table->columns = {"n", "t", "E", "RE"};
    for (const nlsw::EnergyPoint& p : series.points)
      table->rows.push_back(
          {static_cast<double>(p.n), p.t, p.energy, p.rel_err});
    table->stats["max_re"] = series.max_rel_err;
    table->stats["energy0"] = series.energy0;
    table->stats["min_denominator"] = series.min_denominator;
    *out = table;
  });
}

size_t nlsw_table_rows(const nlsw_table* table) {
  return table ? table->rows.size() : 0;
}

size_t nlsw_table_cols(const nlsw_table* table) {
  return table ? table->columns.size() : 0;
}

const char* nlsw_table_column_name(const nlsw_table* table, size_t col) {
  if (!table || col >= table->columns.size()) return "";
  return table->columns[col].c_str();
}

double nlsw_table_value(const nlsw_table* table, size_t row, size_t col) {
  if (!table || row >= table->rows.size() || col >= table->rows[row].size())
    return std::numeric_limits<double>::quiet_NaN();
  return table->rows[row][col];
}

double nlsw_table_stat(const nlsw_table* table, const char* name) {
  if (!table || !name) return std::numeric_limits<double>::quiet_NaN();
  auto it = table->stats.find(name);
  if (it == table->stats.end())
    return std::numeric_limits<double>::quiet_NaN();
  return it->second;
}

void nlsw_table_destroy(nlsw_table* table) { delete table; }

}  // extern "C"
