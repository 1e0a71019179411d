#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "nlsw/experiments.hpp"
#include "oracles.hpp"

using namespace nlsw;
using oracles::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;

ProblemParams example1_params(std::shared_ptr<const Grid2D> grid, double beta) {
  ProblemParams p;
  p.alpha = 1.0;
  p.beta = beta;
  p.grid = std::move(grid);
  return p;
}
}  // namespace

TEST_CASE("manufactured solution values at the origin") {
  const ManufacturedSolution ms(1.0, 1.0);
  const double omega = -std::numbers::sqrt2 * kPi;
  CHECK(ms.omega() == doctest::Approx(omega));
  CHECK(std::abs(ms.u(0, 0, 0) - Complex(1.0)) <= 1e-15);
  CHECK(std::abs(ms.u_t(0, 0, 0) - Complex(0.0, omega)) <= 1e-15);
  CHECK(std::abs(ms.u_tt(0, 0, 0) - Complex(-omega * omega)) <= 1e-13);
}

TEST_CASE("source matches a finite-difference/spectral oracle") {
  // Probe at random grid nodes and times: time derivatives by 4th-order
  // central differences, the Laplacian by the spectral operator.
  const double alpha = 1.0, beta = 1.0;
  const ManufacturedSolution ms(alpha, beta);
  auto grid = make_grid(-8.0, -8.0, 16.0, 16.0, 64);

  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> node(1, grid->interior());
  std::uniform_real_distribution<double> t_dist(0.0, 2.0);
  const double dt = 1e-3;

  for (int probe = 0; probe < 20; ++probe) {
    const double t = t_dist(rng);
    Field lap = laplacian(Field::sample(grid, [&](double x, double y) {
      return ms.u(x, y, t);
    }));
    const int j = node(rng), k = node(rng);
    const double x = grid->node_x(j), y = grid->node_y(k);

    auto u_at = [&](double s) { return ms.u(x, y, s); };
    const Complex ut = (-u_at(t + 2 * dt) + 8.0 * u_at(t + dt) -
                        8.0 * u_at(t - dt) + u_at(t - 2 * dt)) /
                       (12.0 * dt);
    const Complex utt = (-u_at(t + 2 * dt) + 16.0 * u_at(t + dt) -
                         30.0 * u_at(t) + 16.0 * u_at(t - dt) -
                         u_at(t - 2 * dt)) /
                        (12.0 * dt * dt);
    const Complex u = u_at(t);
    const Complex s_oracle = utt + Complex(0.0, alpha) * ut -
                             lap(j - 1, k - 1) + beta * std::norm(u) * u;
    CHECK(std::abs(ms.source(x, y, t) - s_oracle) <= 1e-8);
  }
}

TEST_CASE("source reduces to the cubic term when derivatives cancel") {
  const ManufacturedSolution ms(1.0, 1.0);
  for (double t : {0.0, 0.4}) {
    for (double x : {0.0, 0.8, -1.5}) {
      const Complex derivative_part =
          ms.u_tt(x, 0.3, t) + Complex(0.0, 1.0) * ms.u_t(x, 0.3, t) -
          ms.lap_u(x, 0.3, t);
      const Complex u = ms.u(x, 0.3, t);
      CHECK(std::abs(ms.source(x, 0.3, t) - derivative_part -
                     std::norm(u) * u) <= 1e-13);
    }
  }
}

TEST_CASE("error metrics against sampled exact data") {
  auto grid = make_grid(-8.0, -8.0, 16.0, 16.0, 16);
  ProblemParams p = example1_params(grid, 1.0);
  const ManufacturedSolution ms(p.alpha, p.beta);

  const double t = 0.3;
  Field u = Field::sample(grid, [&](double x, double y) {
    return ms.u(x, y, t);
  });
  Field v = Field::sample(grid, [&](double x, double y) {
    return ms.u_t(x, y, t);
  });
  SavState exact_state{u, v, std::sqrt(H_N(u, p.c0)), t};
  ErrorMetrics zero = h1_error(exact_state, p, ms, t);
  CHECK(zero.h1_err <= 1e-14);
  CHECK(zero.l2_err_v <= 1e-14);
  CHECK(zero.abs_err_r <= 1e-14);

  // Perturb u by eps * (1,1) mode: H1 error is
  // eps * sqrt(lambda2_11 + 1) * sqrt(XY)/2.
  const double eps = 1e-3;
  Field pert = Field::sample(grid, [&](double x, double y) {
    return eps * std::sin(grid->mu(1) * (x + 8.0)) *
           std::sin(grid->nu(1) * (y + 8.0));
  });
  SavState perturbed{u + pert, v, exact_state.r, t};
  const double expected =
      eps * std::sqrt(grid->lambda2(1, 1) + 1.0) * std::sqrt(16.0 * 16.0) /
      2.0;
  ErrorMetrics e = h1_error(perturbed, p, ms, t);
  CHECK(e.h1_err == doctest::Approx(expected).epsilon(1e-10));

  // Applying one global phase to both state and exact data (shift t by a
  // full period of the phase factor) leaves the errors unchanged.
  const double period = 2.0 * kPi / std::abs(ms.omega());
  Field u2 = Field::sample(grid, [&](double x, double y) {
    return ms.u(x, y, t + period);
  });
  SavState shifted{u2 + pert, v, exact_state.r, t + period};
  ErrorMetrics e2 = h1_error(shifted, p, ms, t + period);
  CHECK(e2.h1_err == doctest::Approx(e.h1_err).epsilon(1e-10));
}

TEST_CASE("slope fitting excludes floored rows") {
  std::vector<SweepRow> rows;
  for (double tau : {0.1, 0.05, 0.025, 0.0125})
    rows.push_back(SweepRow{tau, tau * tau, 0, 0, 0, 0});
  CHECK(fit_slope(rows) == doctest::Approx(2.0).epsilon(1e-12));

  rows.push_back(SweepRow{0.00625, 1e-13, 0, 0, 0, 0});  // at the floor
  CHECK(fit_slope(rows) == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<SweepRow> few = {rows[0], rows[1]};
  CHECK(std::isnan(fit_slope(few)));
}

TEST_CASE("temporal sweep shows second order and is deterministic") {
  auto grid = make_grid(-8.0, -8.0, 16.0, 16.0, 32);
  ProblemParams p = example1_params(grid, 1.0);
  SchemeOptions scheme;
  scheme.scheme = Scheme::SavIf;
  const std::vector<double> taus = {0.1, 0.05, 0.025, 0.0125};

  SweepResult a = run_temporal_sweep(p, scheme, taus, 0.5);
  CHECK(a.slope >= 1.9);
  for (const SweepRow& row : a.rows) CHECK(std::isfinite(row.h1_err));

  SweepResult b = run_temporal_sweep(p, scheme, taus, 0.5);
  REQUIRE(b.rows.size() == a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].h1_err == b.rows[i].h1_err);  // bitwise
    CHECK(a.rows[i].l2_err_v == b.rows[i].l2_err_v);
    CHECK(a.rows[i].r_err == b.rows[i].r_err);
  }

  // Slope-fit stability: dropping the smallest-tau row moves the fit < 0.1
  // while every retained error is above 1e-11.
  bool all_above = true;
  for (const SweepRow& row : a.rows) all_above &= row.h1_err > 1e-11;
  CHECK(all_above);
  std::vector<SweepRow> trimmed(a.rows.begin(), a.rows.end() - 1);
  CHECK(std::abs(fit_slope(trimmed) - a.slope) < 0.1);
}

TEST_CASE("r stays consistent with sqrt(H_N) at the scheme's order") {
  auto grid = make_grid(-8.0, -8.0, 16.0, 16.0, 32);
  ProblemParams p = example1_params(grid, 1.0);
  ProblemData data = example1_data(p.alpha, p.beta);
  SchemeOptions scheme;
  scheme.scheme = Scheme::SavIf;

  std::vector<SweepRow> rows;
  for (double tau : {0.1, 0.05, 0.025}) {
    SavState s = run_simulate(p, data, scheme, tau,
                              static_cast<long long>(std::llround(0.5 / tau)));
    const double residual =
        std::abs(s.r - std::sqrt(H_N(s.u.to(Repr::Physical), p.c0)));
    rows.push_back(SweepRow{tau, residual, 0, 0, 0, 0});
  }
  CHECK(fit_slope(rows, 0.0) >= 1.8);
}

TEST_CASE("spatial sweep: under-resolved runs stay finite, errors shrink") {
  auto grid = make_grid(-8.0, -8.0, 16.0, 16.0, 8);
  ProblemParams p = example1_params(grid, 1.0);
  SchemeOptions scheme;
  scheme.scheme = Scheme::SavIf;
  SweepResult r = run_spatial_sweep(p, scheme, {8, 16, 32}, 1e-3, 0.02);
  REQUIRE(r.rows.size() == 3);
  for (const SweepRow& row : r.rows) {
    CHECK(std::isfinite(row.h1_err));
    CHECK(row.h1_err > 0.0);
  }
  CHECK(r.rows[0].h1_err > r.rows[1].h1_err);
  CHECK(r.rows[1].h1_err > r.rows[2].h1_err);
}

TEST_CASE("energy runs conserve the modified energy for two C0 choices") {
  auto grid = make_grid(-32.0, -32.0, 64.0, 64.0, 32);
  ProblemData data = example2_data();
  SchemeOptions scheme;
  scheme.scheme = Scheme::SavIf;
  for (double c0 : {1.0, 10.0}) {
    ProblemParams p = example1_params(grid, 1.0);
    p.c0 = c0;
    EnergySeries series = run_energy_experiment(p, data, scheme, 0.05, 1.0);
    CHECK(series.max_rel_err <= 1e-10);
    CHECK(series.points.size() == 21);
    CHECK(series.points.front().n == 0);
    CHECK(series.points.back().t == doctest::Approx(1.0));
  }
}

TEST_CASE("schemes agree on the conservation example (mutual oracle)") {
  auto grid = make_grid(-32.0, -32.0, 64.0, 64.0, 32);
  ProblemParams p = example1_params(grid, 1.0);
  ProblemData data = example2_data();
  SchemeOptions savif{Scheme::SavIf, {}};
  SchemeOptions ifgrk6{Scheme::Ifgrk6, {}};
  SavState a = run_simulate(p, data, savif, 1e-3, 500);
  SavState b = run_simulate(p, data, ifgrk6, 1e-2, 50);
  Field du = a.u.to(Repr::Physical);
  du -= b.u.to(Repr::Physical);
  CHECK(norm_linf(du) <= 1e-5);
}

TEST_CASE("diagnostics callback reports every step") {
  auto grid = make_grid(-32.0, -32.0, 64.0, 64.0, 16);
  ProblemParams p = example1_params(grid, 1.0);
  ProblemData data = example2_data();
  SchemeOptions scheme;
  scheme.scheme = Scheme::SavIf;
  std::vector<long long> ns;
  std::vector<double> energies;
  run_simulate(p, data, scheme, 0.1, 5,
               [&](long long n, double t, double e, double r, double sup) {
                 ns.push_back(n);
                 energies.push_back(e);
                 CHECK(t == doctest::Approx(0.1 * n).epsilon(1e-12));
                 CHECK(r > 0.0);
                 CHECK(sup >= 0.0);
               });
  REQUIRE(ns.size() == 6);
  for (std::size_t i = 0; i < ns.size(); ++i)
    CHECK(ns[i] == static_cast<long long>(i));
  for (double e : energies)
    CHECK(e == doctest::Approx(energies[0]).epsilon(1e-12));
}
