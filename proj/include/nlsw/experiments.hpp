#ifndef NLSW_EXPERIMENTS_HPP
#define NLSW_EXPERIMENTS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "nlsw/ifrk.hpp"
#include "nlsw/manufactured.hpp"
#include "nlsw/savif.hpp"

namespace nlsw {

enum class Scheme { SavIf, Ifgrk4, Ifgrk6 };

struct SchemeOptions {
  Scheme scheme = Scheme::SavIf;
  IfrkOptions ifrk;
};

std::unique_ptr<Integrator> make_integrator(const ProblemParams& params,
                                            double tau,
                                            const SchemeOptions& options);

struct ErrorMetrics {
  double h1_err;    // (|U-u|_{N,1}^2 + ||U-u||_{l2}^2)^(1/2)
  double l2_err_v;  // ||V - v||_{l2}
  double abs_err_r; // |sqrt(H_N(U)) - r|
};

/// Errors of a state against the manufactured solution sampled at time t.
ErrorMetrics h1_error(const SavState& state, const ProblemParams& params,
                      const ManufacturedSolution& exact, double t);

struct SweepRow {
  double param;        // tau or N
  double h1_err;
  double l2_err_v;
  double r_err;
  double energy_drift; // max_n |E^n - E^0| / max(1, |E^0|)
  double seconds;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double slope;  // log-log LSQ fit; NaN when < 3 eligible rows
};

/// Least-squares slope of log(err) vs log(param), excluding rows with
/// err <= floor; NaN when fewer than 3 rows remain.
double fit_slope(const std::vector<SweepRow>& rows, double floor = 1e-12);

/// Per-step diagnostics: (n, t, E_N^n, r^n, ||u^n||_linf).
using DiagCallback =
    std::function<void(long long n, double t, double energy, double r,
                       double sup_norm)>;

/// Integrate to T = nsteps * tau; returns the final state (spectral repr).
SavState run_simulate(const ProblemParams& params, const ProblemData& data,
                      const SchemeOptions& scheme, double tau, long long nsteps,
                      const DiagCallback& diag = nullptr,
                      double* min_denominator = nullptr);

/// Manufactured-solution temporal refinement at fixed N.
SweepResult run_temporal_sweep(const ProblemParams& base,
                               const SchemeOptions& scheme,
                               const std::vector<double>& taus, double t_final);

/// Manufactured-solution spatial refinement at fixed (small) tau. The grid of
/// `base` supplies the domain corners/extents; N varies per row.
SweepResult run_spatial_sweep(const ProblemParams& base,
                              const SchemeOptions& scheme,
                              const std::vector<int>& resolutions, double tau,
                              double t_final);

struct EnergyPoint {
  long long n;
  double t;
  double energy;
  double rel_err;  // RE^n = |(E^n - E^0)/E^0|
};

struct EnergySeries {
  std::vector<EnergyPoint> points;
  double max_rel_err;
  double energy0;
  double min_denominator;
};

/// Energy-conservation run: per-step RE^n series for the given data.
EnergySeries run_energy_experiment(const ProblemParams& params,
                                   const ProblemData& data,
                                   const SchemeOptions& scheme, double tau,
                                   double t_final);

}  // namespace nlsw

#endif
