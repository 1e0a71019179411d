#ifndef NLSW_SAVIF_HPP
#define NLSW_SAVIF_HPP

#include <optional>

#include "nlsw/expop.hpp"
#include "nlsw/integrator.hpp"

namespace nlsw {

/*
 Second-order linearly implicit SAV integrating-factor scheme.

 One step advances (u^n, v^n, r^n) by

     u^{n+1} = e11(tau) u^n + e12(tau) v^n - tau*beta*rho * e12(tau/2) f~
     v^{n+1} = e21(tau) u^n + e22(tau) v^n - tau*beta*rho * e22(tau/2) f~
     r^{n+1} = 2*rho - r^n

 with f~ = f_N(u~), u~ the midpoint extrapolation (3u^n - u^{n-1})/2
 (u~ = u^0 on the first step), and the scalar rho = r^{n+1/2} obtained
 explicitly: writing u^{n+1} = u1 + rho*u2, v^{n+1} = v1 + rho*v2,

     rho = (4 r^n + tau*b1) / (4 - tau*b2),
     b1  = Re( f~, e21(tau/2)u^n + e21(-tau/2)u1 + e22(tau/2)v^n + e22(-tau/2)v1 )
     b2  = Re( f~, e21(-tau/2)u2 + e22(-tau/2)v2 )

 which makes the midpoint r-equation hold exactly and conserves
 E_N = |u|_{N,1}^2 + ||v||^2 + beta r^2 - beta C0 to rounding.

 A known source S(t) enters u1/v1 through the same midpoint quadrature
 (+tau e12(tau/2) S(t_{n+1/2}) and the e22 analog) before b1 is formed; it
 never appears as a separate term in the r update.
*/

/// The cached exponential blocks one SAV-IF step needs.
struct SavIfElems {
  ExpElementPtr e11_tau, e12_tau, e21_tau, e22_tau;
  ExpElementPtr e12_half, e22_half;        // t = +tau/2
  ExpElementPtr e21_half, e21_mhalf, e22_mhalf;  // +tau/2, -tau/2
};

/// (3 u_n - u_nm1)/2, pointwise in either repr.
Field extrapolate(const Field& u_n, const Field& u_nm1);

/// Midpoint velocity average of Eq-style 'A': 1/2 ( e21(tau/2) u_n +
/// e21(-tau/2) u_np1 + e22(tau/2) v_n + e22(-tau/2) v_np1 ). Spectral fields.
Field midpoint_average(const SavIfElems& elems, const Field& u_n,
                       const Field& u_np1, const Field& v_n,
                       const Field& v_np1);

class SavIfStepper : public Integrator {
public:
  SavIfStepper(const ProblemParams& params, double tau);

  SavState step(const SavState& state) override;

  double tau() const override { return tau_; }
  double min_update_denominator() const override { return min_denominator_; }
  double last_update_denominator() const { return last_denominator_; }
  bool first_step_done() const { return u_prev_.has_value(); }
  void reset_history() override { u_prev_.reset(); }
  /// Inject the u^{n-1} level (checkpoint resume of an in-flight trajectory).
  void set_previous_u(const Field& u_prev);
  const std::optional<Field>& previous_u() const { return u_prev_; }

  const SavIfElems& elems() const { return elems_; }

  /// Denominator guard threshold for |4 - tau*b2|.
  static constexpr double kDegenerateTol = 1e-10;

private:
  ProblemParams params_;
  double tau_;
  ExpTable table_;
  SavIfElems elems_;
  std::optional<Field> u_prev_;  // spectral
  double min_denominator_ = kNoDenominator;
  double last_denominator_ = kNoDenominator;
};

}  // namespace nlsw

#endif
