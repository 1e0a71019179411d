#include "nlsw/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace nlsw {

std::unique_ptr<Integrator> make_integrator(const ProblemParams& params,
                                            double tau,
                                            const SchemeOptions& options) {
  switch (options.scheme) {
    case Scheme::SavIf:
      return std::make_unique<SavIfStepper>(params, tau);
    case Scheme::Ifgrk4:
      return std::make_unique<IfrkStepper>(params, tau, gauss_tableau(2),
                                           options.ifrk);
    case Scheme::Ifgrk6:
      return std::make_unique<IfrkStepper>(params, tau, gauss_tableau(3),
                                           options.ifrk);
  }
  fail(ErrorCode::InvalidArgument, "unknown scheme");
}

ErrorMetrics h1_error(const SavState& state, const ProblemParams& params,
                      const ManufacturedSolution& exact, double t) {
  const Field u_exact = Field::sample(params.grid, [&](double x, double y) {
    return exact.u(x, y, t);
  });
  const Field v_exact = Field::sample(params.grid, [&](double x, double y) {
    return exact.u_t(x, y, t);
  });
  Field du = u_exact;
  du -= state.u.to(Repr::Physical);
  Field dv = v_exact;
  dv -= state.v.to(Repr::Physical);

  const FieldNorms n = norms(du);
  return ErrorMetrics{
      std::sqrt(n.semi_h1 * n.semi_h1 + n.l2 * n.l2), norm_l2(dv),
      std::abs(std::sqrt(H_N(u_exact, params.c0)) - state.r)};
}

double fit_slope(const std::vector<SweepRow>& rows, double floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const SweepRow& row : rows) {
    if (!(row.h1_err > floor)) continue;
    const double x = std::log(row.param);
    const double y = std::log(row.h1_err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SavState run_simulate(const ProblemParams& params, const ProblemData& data,
                      const SchemeOptions& scheme, double tau, long long nsteps,
                      const DiagCallback& diag, double* min_denominator) {
  ProblemParams effective = params;
  effective.source = data.source;
  effective.validate();
  require(nsteps >= 1, ErrorCode::InvalidArgument,
          "run_simulate: needs at least one step");

  SavState state = init_state(effective, data.u0, data.u1);
  if (diag)
    diag(0, state.t, discrete_energy(state, effective), state.r,
         norm_linf(state.u));
  state = state.to(Repr::Spectral);

  std::unique_ptr<Integrator> stepper =
      make_integrator(effective, tau, scheme);
  for (long long n = 1; n <= nsteps; ++n) {
    state = stepper->step(state);
    if (diag)
      diag(n, state.t, discrete_energy(state, effective), state.r,
           norm_linf(state.u));
  }
  if (min_denominator) *min_denominator = stepper->min_update_denominator();
  return state;
}

namespace {

long long step_count(double tau, double t_final) {
  require(tau > 0.0 && t_final >= tau, ErrorCode::InvalidArgument,
          "sweep: needs 0 < tau <= T");
  const long long n = std::llround(t_final / tau);
  require(n >= 1 && std::abs(n * tau - t_final) <= 1e-8 * std::max(1.0, t_final),
          ErrorCode::InvalidArgument,
          "sweep: T must be an integer multiple of tau");
  return n;
}

// Per-row reference: either exact samples (spatial sweep, where spatial
// error is the measurand) or a same-grid fine-step trajectory (temporal
// sweep, where spatial error must cancel so the row reflects time error).
struct ErrorReference {
  Field u;  // physical
  Field v;  // physical
  double r;
};

SweepRow measure_run(const ProblemParams& params, const ProblemData& data,
                     const ErrorReference& ref, const SchemeOptions& scheme,
                     double tau, double param, long long nsteps) {
  ProblemParams effective = params;
  effective.source = data.source;
  effective.validate();

  const auto start = std::chrono::steady_clock::now();
  SavState state = init_state(effective, data.u0, data.u1);
  const double e0 = discrete_energy(state, effective);
  state = state.to(Repr::Spectral);
  std::unique_ptr<Integrator> stepper =
      make_integrator(effective, tau, scheme);
  double drift = 0.0;
  for (long long n = 0; n < nsteps; ++n) {
    state = stepper->step(state);
    drift = std::max(drift,
                     std::abs(discrete_energy(state, effective) - e0));
  }
  const auto stop = std::chrono::steady_clock::now();

  Field du = ref.u;
  du -= state.u.to(Repr::Physical);
  Field dv = ref.v;
  dv -= state.v.to(Repr::Physical);
  const FieldNorms n = norms(du);
  return SweepRow{param,
                  std::sqrt(n.semi_h1 * n.semi_h1 + n.l2 * n.l2),
                  norm_l2(dv),
                  std::abs(ref.r - state.r),
                  drift / std::max(1.0, std::abs(e0)),
                  std::chrono::duration<double>(stop - start).count()};
}

}  // namespace

SweepResult run_temporal_sweep(const ProblemParams& base,
                               const SchemeOptions& scheme,
                               const std::vector<double>& taus,
                               double t_final) {
  require(!taus.empty(), ErrorCode::InvalidArgument,
          "temporal sweep: tau list must be non-empty");
  ProblemParams params = base;
  const ProblemData data = example1_data(base.alpha, base.beta);
  params.source = data.source;
  params.validate();

  // Same-grid reference trajectory at tau_min/5 so the rows isolate the
  // temporal error; the spatial component is common and cancels.
  double tau_min = taus.front();
  for (double tau : taus) tau_min = std::min(tau_min, tau);
  const double tau_ref = tau_min / 5.0;
  SchemeOptions ref_scheme;
  ref_scheme.scheme = Scheme::Ifgrk6;
  const SavState ref_state = run_simulate(
      params, data, ref_scheme, tau_ref, step_count(tau_ref, t_final));
  const ErrorReference ref{ref_state.u.to(Repr::Physical),
                           ref_state.v.to(Repr::Physical), ref_state.r};

  SweepResult result;
  for (double tau : taus)
    result.rows.push_back(measure_run(base, data, ref, scheme, tau, tau,
                                      step_count(tau, t_final)));
  result.slope = fit_slope(result.rows);
  return result;
}

SweepResult run_spatial_sweep(const ProblemParams& base,
                              const SchemeOptions& scheme,
                              const std::vector<int>& resolutions, double tau,
                              double t_final) {
  require(!resolutions.empty(), ErrorCode::InvalidArgument,
          "spatial sweep: N list must be non-empty");
  const ManufacturedSolution exact(base.alpha, base.beta);
  const ProblemData data = example1_data(base.alpha, base.beta);
  const long long nsteps = step_count(tau, t_final);

  SweepResult result;
  for (int n : resolutions) {
    ProblemParams params = base;
    params.grid = make_grid(base.grid->x_left(), base.grid->y_left(),
                            base.grid->extent_x(), base.grid->extent_y(), n);
    const Field u_exact =
        Field::sample(params.grid, [&](double x, double y) {
          return exact.u(x, y, nsteps * tau);
        });
    const Field v_exact =
        Field::sample(params.grid, [&](double x, double y) {
          return exact.u_t(x, y, nsteps * tau);
        });
    const ErrorReference ref{u_exact, v_exact,
                             std::sqrt(H_N(u_exact, params.c0))};
    result.rows.push_back(measure_run(params, data, ref, scheme, tau,
                                      static_cast<double>(n), nsteps));
  }
  result.slope = fit_slope(result.rows);
  return result;
}

EnergySeries run_energy_experiment(const ProblemParams& params,
                                   const ProblemData& data,
                                   const SchemeOptions& scheme, double tau,
                                   double t_final) {
  ProblemParams effective = params;
  effective.source = data.source;
  effective.validate();
  const long long nsteps = step_count(tau, t_final);

  SavState state = init_state(effective, data.u0, data.u1);
  const double e0 = discrete_energy(state, effective);
  require(e0 != 0.0, ErrorCode::InvalidArgument,
          "energy experiment: E_N^0 vanishes, RE^n undefined");
  state = state.to(Repr::Spectral);

  EnergySeries series;
  series.energy0 = e0;
  series.max_rel_err = 0.0;
  series.points.push_back(EnergyPoint{0, 0.0, e0, 0.0});

  std::unique_ptr<Integrator> stepper =
      make_integrator(effective, tau, scheme);
  for (long long n = 1; n <= nsteps; ++n) {
    state = stepper->step(state);
    const double e = discrete_energy(state, effective);
    const double re = std::abs((e - e0) / e0);
    series.max_rel_err = std::max(series.max_rel_err, re);
    series.points.push_back(EnergyPoint{n, state.t, e, re});
  }
  series.min_denominator = stepper->min_update_denominator();
  return series;
}

}  // namespace nlsw
