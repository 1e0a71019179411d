#ifndef NLSW_SAV_HPP
#define NLSW_SAV_HPP

#include <functional>
#include <optional>
#include <string>

#include "nlsw/field.hpp"

namespace nlsw {

using SourceFn = std::function<Complex(double, double, double)>;  // (x, y, t)

struct ProblemParams {
  double alpha = 1.0;
  double beta = 1.0;
  double c0 = 1.0;
  std::shared_ptr<const Grid2D> grid;
  SourceFn source;           // optional; empty means no source
  bool nonlinear_off = false;  // diagnostic: force f_N == 0 (pure linear flow)

  void validate() const;
  bool has_source() const { return static_cast<bool>(source); }
};

/// SAV state triple: solution u, velocity v = du/dt, auxiliary scalar r.
struct SavState {
  Field u;
  Field v;
  double r = 0.0;
  double t = 0.0;

  SavState to(Repr repr) const { return SavState{u.to(repr), v.to(repr), r, t}; }
};

/// g(u) = |u|^2 u, pointwise (physical repr).
Field g_fn(const Field& u);

/// H_N(u) = (G(u), 1)_{l2} + C0 with G = |u|^4 / 2; always >= C0 > 0.
double H_N(const Field& u, double c0);

/// f_N(u) = g(u) / sqrt(H_N(u)).
Field f_N(const Field& u, double c0);

/// r(0) = sqrt(H_N(u0)).
double r_init(const Field& u0, double c0);

/// E_N = |u|_{N,1}^2 + ||v||_{l2}^2 + beta r^2 - beta C0.
double discrete_energy(const SavState& state, const ProblemParams& params);

/// Point-sample the initial conditions at the grid nodes; r = sqrt(H_N(u0)),
/// t = 0. Rejects non-finite samples.
SavState init_state(const ProblemParams& params,
                    const std::function<Complex(double, double)>& u0fn,
                    const std::function<Complex(double, double)>& u1fn);

/// State checkpoint: header lines (n, t, r) followed by rows
/// (j,k,Re u,Im u,Re v,Im v), all floats with 17 significant digits.
void save_state_csv(const SavState& state, long long step_index,
                    const std::string& path);

struct LoadedState {
  SavState state;
  long long step_index;
};
LoadedState load_state_csv(std::shared_ptr<const Grid2D> grid,
                           const std::string& path);

}  // namespace nlsw

#endif
