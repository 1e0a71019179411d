#include "runner.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include "nlsw.h"

namespace nlsw_cli {

using nlohmann::json;

namespace {

struct ApiError : std::runtime_error {
  ApiError(nlsw_status status, const std::string& context)
      : std::runtime_error(context + ": " + nlsw_status_string(status) +
                           " (" + nlsw_last_error_message() + ")"),
        status(status) {}
  nlsw_status status;
};

void check(nlsw_status status, const std::string& context) {
  if (status != NLSW_OK) throw ApiError(status, context);
}

struct GridHandle {
  nlsw_grid* ptr = nullptr;
  ~GridHandle() { nlsw_grid_destroy(ptr); }
};

struct SolverHandle {
  nlsw_solver* ptr = nullptr;
  ~SolverHandle() { nlsw_solver_destroy(ptr); }
};

struct TableHandle {
  nlsw_table* ptr = nullptr;
  ~TableHandle() { nlsw_table_destroy(ptr); }
};

struct CsvFile {
  explicit CsvFile(const std::string& path) : fp(std::fopen(path.c_str(), "w")) {
    if (!fp) throw std::runtime_error("cannot open " + path + " for write");
  }
  ~CsvFile() { std::fclose(fp); }
  void row(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    va_list args;
    va_start(args, fmt);
    std::vfprintf(fp, fmt, args);
    va_end(args);
  }
  std::FILE* fp;
};

nlsw_solver_options options_of(const RunConfig& c) {
  nlsw_solver_options o;
  nlsw_solver_options_init(&o);
  o.alpha = c.problem.alpha;
  o.beta = c.problem.beta;
  o.c0 = c.problem.c0;
  o.tau = c.time.tau;
  o.scheme = c.scheme.name == "savif"    ? NLSW_SCHEME_SAVIF
             : c.scheme.name == "ifgrk4" ? NLSW_SCHEME_IFGRK4
                                         : NLSW_SCHEME_IFGRK6;
  o.predictor_tol = c.scheme.predictor_tol;
  o.predictor_max_iter = c.scheme.predictor_max_iter;
  o.manufactured_source = c.problem.source == "manufactured" ? 1 : 0;
  o.strict_predictor = c.scheme.strict_predictor ? 1 : 0;
  return o;
}

nlsw_initial_data initial_of(const RunConfig& c) {
  if (c.problem.initial == "example1") return NLSW_DATA_EXAMPLE1;
  if (c.problem.initial == "example2") return NLSW_DATA_EXAMPLE2;
  return NLSW_DATA_ZERO;
}

void write_manifest(const RunConfig& config, const json& results) {
  json manifest;
  manifest["version"] = nlsw_version();
  manifest["experiment"] = config.experiment.kind;
  manifest["config"] = serialize_config(config);
  manifest["results"] = results;
  std::ofstream out(config.io.output_dir + "/manifest.json");
  out << manifest.dump(2) << "\n";
}

void write_table_csv(const nlsw_table* table, const std::string& path) {
  CsvFile csv(path);
  const size_t cols = nlsw_table_cols(table);
  for (size_t c = 0; c < cols; ++c)
    csv.row("%s%s", nlsw_table_column_name(table, c),
            c + 1 < cols ? "," : "\n");
  for (size_t r = 0; r < nlsw_table_rows(table); ++r)
    for (size_t c = 0; c < cols; ++c)
      csv.row("%.17g%s", nlsw_table_value(table, r, c),
              c + 1 < cols ? "," : "\n");
}

// Raw section data along the grid diagonal (j = k), replacing plots.
void write_section_csv(const nlsw_solver* solver, int resolution,
                       const RunConfig& config, const std::string& path) {
  const int m = resolution - 1;
  std::vector<double> u_re(static_cast<size_t>(m) * m),
      u_im(u_re.size()), v_re(u_re.size()), v_im(u_re.size());
  check(nlsw_solver_get_state(solver, u_re.data(), u_im.data(), v_re.data(),
                              v_im.data()),
        "get_state");
  CsvFile csv(path);
  csv.row("j,x,y,re_u,im_u,abs_u\n");
  const double h1 = config.problem.domain.extent_x / resolution;
  const double h2 = config.problem.domain.extent_y / resolution;
  for (int j = 1; j <= m; ++j) {
    const size_t idx = static_cast<size_t>(j - 1) * m + (j - 1);
    csv.row("%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", j,
            config.problem.domain.x_left + j * h1,
            config.problem.domain.y_left + j * h2, u_re[idx], u_im[idx],
            std::hypot(u_re[idx], u_im[idx]));
  }
}

int run_simulate(const RunConfig& config, const std::string& resume_path) {
  const std::string& dir = config.io.output_dir;
  GridHandle grid;
  check(nlsw_grid_create(config.problem.domain.x_left,
                         config.problem.domain.y_left,
                         config.problem.domain.extent_x,
                         config.problem.domain.extent_y, config.problem.n,
                         &grid.ptr),
        "grid_create");
  const nlsw_solver_options options = options_of(config);
  SolverHandle solver;
  check(nlsw_solver_create(grid.ptr, &options, &solver.ptr), "solver_create");

  if (resume_path.empty()) {
    check(nlsw_solver_set_initial_preset(solver.ptr, initial_of(config)),
          "set_initial");
    check(nlsw_solver_save_checkpoint(solver.ptr,
                                      (dir + "/initial_state.csv").c_str()),
          "save initial checkpoint");
  } else {
    check(nlsw_solver_load_checkpoint(solver.ptr, resume_path.c_str()),
          "load checkpoint " + resume_path);
  }

  const long long total =
      std::llround(config.time.t_final / config.time.tau);
  long long n = nlsw_solver_step_index(solver.ptr);

  CsvFile diag(dir + "/diagnostics.csv");
  diag.row("n,t,E,r,u_linf\n");
  diag.row("%lld,%.17g,%.17g,%.17g,%.17g\n", n, nlsw_solver_time(solver.ptr),
           nlsw_solver_energy(solver.ptr), nlsw_solver_aux_variable(solver.ptr),
           nlsw_solver_sup_norm(solver.ptr));

  try {
    while (n < total) {
      check(nlsw_solver_step(solver.ptr, 1), "step");
      n = nlsw_solver_step_index(solver.ptr);
      diag.row("%lld,%.17g,%.17g,%.17g,%.17g\n", n,
               nlsw_solver_time(solver.ptr), nlsw_solver_energy(solver.ptr),
               nlsw_solver_aux_variable(solver.ptr),
               nlsw_solver_sup_norm(solver.ptr));
      if (config.io.checkpoint_every > 0 &&
          n % config.io.checkpoint_every == 0)
        check(nlsw_solver_save_checkpoint(solver.ptr,
                                          (dir + "/checkpoint.csv").c_str()),
              "save checkpoint");
    }
  } catch (const ApiError& e) {
    // Surface the step index and a snapshot of the last good state.
    const std::string snapshot = dir + "/error_state.csv";
    nlsw_solver_save_checkpoint(solver.ptr, snapshot.c_str());
    json record;
    record["status"] = static_cast<int>(e.status);
    record["code"] = nlsw_status_string(e.status);
    record["message"] = e.what();
    record["step"] = n;
    record["snapshot"] = snapshot;
    std::ofstream out(dir + "/error.json");
    out << record.dump(2) << "\n";
    std::fprintf(stderr, "error at step %lld: %s\n", n, e.what());
    return 3;
  }

  check(nlsw_solver_save_checkpoint(solver.ptr,
                                    (dir + "/final_state.csv").c_str()),
        "save final state");
  write_section_csv(solver.ptr, config.problem.n, config,
                    dir + "/section.csv");

  json results;
  results["steps"] = n;
  results["t_final"] = nlsw_solver_time(solver.ptr);
  results["energy_final"] = nlsw_solver_energy(solver.ptr);
  results["r_final"] = nlsw_solver_aux_variable(solver.ptr);
  results["u_linf_final"] = nlsw_solver_sup_norm(solver.ptr);
  const double min_den = nlsw_solver_min_update_denominator(solver.ptr);
  if (min_den < 1e299) results["min_update_denominator"] = min_den;
  write_manifest(config, results);
  return 0;
}

int run_temporal(const RunConfig& config) {
  GridHandle grid;
  check(nlsw_grid_create(config.problem.domain.x_left,
                         config.problem.domain.y_left,
                         config.problem.domain.extent_x,
                         config.problem.domain.extent_y, config.problem.n,
                         &grid.ptr),
        "grid_create");
  const nlsw_solver_options options = options_of(config);
  TableHandle table;
  check(nlsw_run_temporal_sweep(grid.ptr, &options,
                                config.experiment.tau_list.data(),
                                config.experiment.tau_list.size(),
                                config.time.t_final, &table.ptr),
        "temporal sweep");
  write_table_csv(table.ptr, config.io.output_dir + "/sweep.csv");
  json results;
  results["slope"] = nlsw_table_stat(table.ptr, "slope");
  results["rows"] = nlsw_table_rows(table.ptr);
  write_manifest(config, results);
  return 0;
}

int run_spatial(const RunConfig& config) {
  const nlsw_solver_options options = options_of(config);
  TableHandle table;
  check(nlsw_run_spatial_sweep(config.problem.domain.x_left,
                               config.problem.domain.y_left,
                               config.problem.domain.extent_x,
                               config.problem.domain.extent_y, &options,
                               config.experiment.n_list.data(),
                               config.experiment.n_list.size(),
                               config.time.t_final, &table.ptr),
        "spatial sweep");
  write_table_csv(table.ptr, config.io.output_dir + "/sweep.csv");
  json results;
  results["slope"] = nlsw_table_stat(table.ptr, "slope");
  results["rows"] = nlsw_table_rows(table.ptr);
  write_manifest(config, results);
  return 0;
}

int run_energy(const RunConfig& config) {
  const std::string& dir = config.io.output_dir;
  GridHandle grid;
  check(nlsw_grid_create(config.problem.domain.x_left,
                         config.problem.domain.y_left,
                         config.problem.domain.extent_x,
                         config.problem.domain.extent_y, config.problem.n,
                         &grid.ptr),
        "grid_create");
  const nlsw_solver_options options = options_of(config);

  // Initial-state checkpoint first, so E_N^0 can be re-derived from disk.
  {
    SolverHandle solver;
    check(nlsw_solver_create(grid.ptr, &options, &solver.ptr),
          "solver_create");
    check(nlsw_solver_set_initial_preset(solver.ptr, initial_of(config)),
          "set_initial");
    check(nlsw_solver_save_checkpoint(solver.ptr,
                                      (dir + "/initial_state.csv").c_str()),
          "save initial checkpoint");
  }

  TableHandle table;
  check(nlsw_run_energy_series(grid.ptr, &options, initial_of(config),
                               config.time.t_final, &table.ptr),
        "energy series");
  write_table_csv(table.ptr, dir + "/energy.csv");
  json results;
  results["max_re"] = nlsw_table_stat(table.ptr, "max_re");
  results["energy0"] = nlsw_table_stat(table.ptr, "energy0");
  const double min_den = nlsw_table_stat(table.ptr, "min_denominator");
  if (min_den < 1e299) results["min_update_denominator"] = min_den;
  write_manifest(config, results);
  return 0;
}

}  // namespace

int run_experiment(const RunConfig& config, const std::string& resume_path) {
  std::filesystem::create_directories(config.io.output_dir);
  try {
    if (config.experiment.kind == "simulate")
      return run_simulate(config, resume_path);
    if (config.experiment.kind == "temporal_sweep") return run_temporal(config);
    if (config.experiment.kind == "spatial_sweep") return run_spatial(config);
    return run_energy(config);
  } catch (const ApiError& e) {
    json record;
    record["status"] = static_cast<int>(e.status);
    record["code"] = nlsw_status_string(e.status);
    record["message"] = e.what();
    std::ofstream out(config.io.output_dir + "/error.json");
    out << record.dump(2) << "\n";
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace nlsw_cli
