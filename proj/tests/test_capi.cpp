// Exercises the shared library's C surface end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nlsw.h"

namespace {

struct Grid {
  nlsw_grid* ptr = nullptr;
  ~Grid() { nlsw_grid_destroy(ptr); }
};

struct Solver {
  nlsw_solver* ptr = nullptr;
  ~Solver() { nlsw_solver_destroy(ptr); }
};

struct Table {
  nlsw_table* ptr = nullptr;
  ~Table() { nlsw_table_destroy(ptr); }
};

nlsw_solver_options default_options() {
  nlsw_solver_options o;
  nlsw_solver_options_init(&o);
  return o;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("grid lifecycle and validation through the C API") {
  Grid g;
  CHECK(nlsw_grid_create(-8.0, -8.0, 16.0, 16.0, 64, &g.ptr) == NLSW_OK);
  CHECK(nlsw_grid_resolution(g.ptr) == 64);
  CHECK(nlsw_grid_size(g.ptr) == 63u * 63u);

  nlsw_grid* bad = nullptr;
  CHECK(nlsw_grid_create(0, 0, 16.0, 16.0, 7, &bad) == NLSW_ERR_INVALID_ARG);
  CHECK(bad == nullptr);
  CHECK(std::strlen(nlsw_last_error_message()) > 0);
  CHECK(nlsw_grid_create(0, 0, -1.0, 16.0, 8, &bad) == NLSW_ERR_INVALID_ARG);
}

TEST_CASE("solver validation maps to status codes") {
  Grid g;
  REQUIRE(nlsw_grid_create(0, 0, 6.283, 6.283, 16, &g.ptr) == NLSW_OK);
  nlsw_solver_options o = default_options();
  o.alpha = 0.0;
  nlsw_solver* solver = nullptr;
  CHECK(nlsw_solver_create(g.ptr, &o, &solver) == NLSW_ERR_INVALID_ARG);
  o = default_options();
  o.tau = -0.1;
  CHECK(nlsw_solver_create(g.ptr, &o, &solver) == NLSW_ERR_INVALID_ARG);
  CHECK(std::string(nlsw_status_string(NLSW_ERR_SOLVE_DEGENERATE)) ==
        "update-r denominator degenerate");
  CHECK(std::string(nlsw_version()).size() > 0);
}

TEST_CASE("stepping conserves energy and reports diagnostics") {
  Grid g;
  REQUIRE(nlsw_grid_create(-32.0, -32.0, 64.0, 64.0, 32, &g.ptr) == NLSW_OK);
  nlsw_solver_options o = default_options();
  o.tau = 0.05;
  Solver s;
  REQUIRE(nlsw_solver_create(g.ptr, &o, &s.ptr) == NLSW_OK);
  REQUIRE(nlsw_solver_set_initial_preset(s.ptr, NLSW_DATA_EXAMPLE2) ==
          NLSW_OK);

  const double e0 = nlsw_solver_energy(s.ptr);
  CHECK(nlsw_solver_aux_variable(s.ptr) > 0.0);
  CHECK(nlsw_solver_step(s.ptr, 20) == NLSW_OK);
  CHECK(nlsw_solver_step_index(s.ptr) == 20);
  CHECK(nlsw_solver_time(s.ptr) == doctest::Approx(1.0));
  CHECK(std::abs(nlsw_solver_energy(s.ptr) - e0) <=
        1e-10 * (1.0 + std::abs(e0)));
  CHECK(nlsw_solver_sup_norm(s.ptr) > 0.0);
  CHECK(nlsw_solver_min_update_denominator(s.ptr) >= 1.0);
}

TEST_CASE("state arrays round-trip") {
  Grid g;
  REQUIRE(nlsw_grid_create(0, 0, 3.14159, 3.14159, 8, &g.ptr) == NLSW_OK);
  nlsw_solver_options o = default_options();
  Solver s;
  REQUIRE(nlsw_solver_create(g.ptr, &o, &s.ptr) == NLSW_OK);

  const size_t n = nlsw_grid_size(g.ptr);
  std::vector<double> ur(n), ui(n), vr(n), vi(n);
  for (size_t i = 0; i < n; ++i) {
    ur[i] = 0.01 * static_cast<double>(i);
    ui[i] = -0.02 * static_cast<double>(i);
    vr[i] = 0.5;
    vi[i] = 0.0;
  }
  REQUIRE(nlsw_solver_set_initial_arrays(s.ptr, ur.data(), ui.data(),
                                         vr.data(), vi.data()) == NLSW_OK);
  std::vector<double> ur2(n), ui2(n), vr2(n), vi2(n);
  REQUIRE(nlsw_solver_get_state(s.ptr, ur2.data(), ui2.data(), vr2.data(),
                                vi2.data()) == NLSW_OK);
  CHECK(ur == ur2);
  CHECK(ui == ui2);
  CHECK(vr == vr2);
  CHECK(vi == vi2);
}

TEST_CASE("checkpoint resume reproduces the trajectory bitwise") {
  const std::string path = temp_path("nlsw_capi_ckpt.csv");
  for (nlsw_scheme scheme : {NLSW_SCHEME_SAVIF, NLSW_SCHEME_IFGRK4}) {
    Grid g;
    REQUIRE(nlsw_grid_create(-32.0, -32.0, 64.0, 64.0, 16, &g.ptr) == NLSW_OK);
    nlsw_solver_options o = default_options();
    o.scheme = scheme;
    o.tau = 0.05;

    // Uninterrupted: 10 steps.
    Solver full;
    REQUIRE(nlsw_solver_create(g.ptr, &o, &full.ptr) == NLSW_OK);
    REQUIRE(nlsw_solver_set_initial_preset(full.ptr, NLSW_DATA_EXAMPLE2) ==
            NLSW_OK);
    REQUIRE(nlsw_solver_step(full.ptr, 10) == NLSW_OK);

    // Interrupted at 6, checkpointed, resumed in a fresh solver.
    Solver first;
    REQUIRE(nlsw_solver_create(g.ptr, &o, &first.ptr) == NLSW_OK);
    REQUIRE(nlsw_solver_set_initial_preset(first.ptr, NLSW_DATA_EXAMPLE2) ==
            NLSW_OK);
    REQUIRE(nlsw_solver_step(first.ptr, 6) == NLSW_OK);
    REQUIRE(nlsw_solver_save_checkpoint(first.ptr, path.c_str()) == NLSW_OK);

    Solver resumed;
    REQUIRE(nlsw_solver_create(g.ptr, &o, &resumed.ptr) == NLSW_OK);
    REQUIRE(nlsw_solver_load_checkpoint(resumed.ptr, path.c_str()) == NLSW_OK);
    CHECK(nlsw_solver_step_index(resumed.ptr) == 6);
    REQUIRE(nlsw_solver_step(resumed.ptr, 4) == NLSW_OK);

    const size_t n = nlsw_grid_size(g.ptr);
    std::vector<double> a(4 * n), b(4 * n);
    REQUIRE(nlsw_solver_get_state(full.ptr, a.data(), a.data() + n,
                                  a.data() + 2 * n, a.data() + 3 * n) ==
            NLSW_OK);
    REQUIRE(nlsw_solver_get_state(resumed.ptr, b.data(), b.data() + n,
                                  b.data() + 2 * n, b.data() + 3 * n) ==
            NLSW_OK);
    CHECK(a == b);  // bitwise
    CHECK(nlsw_solver_aux_variable(full.ptr) ==
          nlsw_solver_aux_variable(resumed.ptr));
    CHECK(nlsw_solver_time(full.ptr) == nlsw_solver_time(resumed.ptr));

    std::filesystem::remove(path);
    std::filesystem::remove(path + ".prev.csv");
  }
}

TEST_CASE("degenerate step surfaces the right status code") {
  const double pi = 3.141592653589793;
  Grid g;
  REQUIRE(nlsw_grid_create(0, 0, pi, pi, 16, &g.ptr) == NLSW_OK);

  const size_t n = nlsw_grid_size(g.ptr);
  const int m = nlsw_grid_resolution(g.ptr) - 1;
  std::vector<double> ur(n, 0.0), ui(n, 0.0), vr(n, 0.0), vi(n, 0.0);
  for (int j = 1; j <= m; ++j)
    for (int k = 1; k <= m; ++k)
      ur[(j - 1) * m + (k - 1)] =
          3.0 * std::sin(j * pi / (m + 1)) * std::sin(k * pi / (m + 1));

  // On the first step b2 = -tau*beta*||f~||^2 with f~ = f_N(u0), so for
  // beta = -1 the denominator 4 - tau*b2 vanishes at tau = 2/||f~||.
  const double h = pi / (m + 1);
  double quartic = 0.0, f2 = 0.0;
  for (size_t i = 0; i < n; ++i) quartic += 0.5 * ur[i] * ur[i] * ur[i] * ur[i];
  const double hn = h * h * quartic + 1.0;
  for (size_t i = 0; i < n; ++i) {
    const double gi = ur[i] * ur[i] * ur[i];
    f2 += gi * gi / hn;
  }
  const double tau_star = 2.0 / std::sqrt(h * h * f2);

  nlsw_solver_options o = default_options();
  o.beta = -1.0;
  o.tau = tau_star;
  Solver s;
  REQUIRE(nlsw_solver_create(g.ptr, &o, &s.ptr) == NLSW_OK);
  REQUIRE(nlsw_solver_set_initial_arrays(s.ptr, ur.data(), ui.data(),
                                         vr.data(), vi.data()) == NLSW_OK);
  CHECK(nlsw_solver_step(s.ptr, 1) == NLSW_ERR_SOLVE_DEGENERATE);
  // State must still be the committed pre-step state.
  CHECK(nlsw_solver_step_index(s.ptr) == 0);
  CHECK(nlsw_solver_time(s.ptr) == 0.0);
}

TEST_CASE("field dump writes the documented debug CSV") {
  Grid g;
  REQUIRE(nlsw_grid_create(0, 0, 1.0, 1.0, 8, &g.ptr) == NLSW_OK);
  nlsw_solver_options o = default_options();
  Solver s;
  REQUIRE(nlsw_solver_create(g.ptr, &o, &s.ptr) == NLSW_OK);
  REQUIRE(nlsw_solver_set_initial_preset(s.ptr, NLSW_DATA_ZERO) == NLSW_OK);
  const std::string path = temp_path("nlsw_capi_dump.csv");
  CHECK(nlsw_solver_dump_field(s.ptr, "u", path.c_str()) == NLSW_OK);
  CHECK(nlsw_solver_dump_field(s.ptr, "w", path.c_str()) ==
        NLSW_ERR_INVALID_ARG);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "j,k,re,im");
  std::filesystem::remove(path);
}

TEST_CASE("experiment tables carry named columns and stats") {
  Grid g;
  REQUIRE(nlsw_grid_create(-32.0, -32.0, 64.0, 64.0, 16, &g.ptr) == NLSW_OK);
  nlsw_solver_options o = default_options();
  o.tau = 0.1;
  Table energy;
  REQUIRE(nlsw_run_energy_series(g.ptr, &o, NLSW_DATA_EXAMPLE2, 1.0,
                                 &energy.ptr) == NLSW_OK);
  CHECK(nlsw_table_rows(energy.ptr) == 11);
  CHECK(nlsw_table_cols(energy.ptr) == 4);
  CHECK(std::string(nlsw_table_column_name(energy.ptr, 3)) == "RE");
  CHECK(nlsw_table_stat(energy.ptr, "max_re") <= 1e-10);
  CHECK(std::isnan(nlsw_table_stat(energy.ptr, "nope")));

  Grid g1;
  REQUIRE(nlsw_grid_create(-8.0, -8.0, 16.0, 16.0, 16, &g1.ptr) == NLSW_OK);
  nlsw_solver_options o1 = default_options();
  o1.manufactured_source = 1;
  const double taus[] = {0.1, 0.05, 0.025};
  Table sweep;
  REQUIRE(nlsw_run_temporal_sweep(g1.ptr, &o1, taus, 3, 0.2, &sweep.ptr) ==
          NLSW_OK);
  CHECK(nlsw_table_rows(sweep.ptr) == 3);
  CHECK(std::string(nlsw_table_column_name(sweep.ptr, 1)) == "h1_err");
  CHECK(nlsw_table_value(sweep.ptr, 0, 0) == 0.1);
  CHECK(std::isfinite(nlsw_table_stat(sweep.ptr, "slope")));
}
