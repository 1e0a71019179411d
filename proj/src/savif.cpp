#include "nlsw/savif.hpp"

#include <cmath>

namespace nlsw {

Field extrapolate(const Field& u_n, const Field& u_nm1) {
  Field out = u_n;
  out *= Complex(1.5);
  out.axpy(Complex(-0.5), u_nm1);
  return out;
}

Field midpoint_average(const SavIfElems& elems, const Field& u_n,
                       const Field& u_np1, const Field& v_n,
                       const Field& v_np1) {
  Field acc = Field::zeros(u_n.grid_ptr(), Repr::Spectral);
  elems.e21_half->accumulate(Complex(0.5), u_n, acc);
  elems.e21_mhalf->accumulate(Complex(0.5), u_np1, acc);
  elems.e22_half->accumulate(Complex(0.5), v_n, acc);
  elems.e22_mhalf->accumulate(Complex(0.5), v_np1, acc);
  return acc;
}

SavIfStepper::SavIfStepper(const ProblemParams& params, double tau)
    : params_(params), tau_(tau), table_(params.grid, params.alpha) {
  params_.validate();
  require(tau_ > 0.0 && std::isfinite(tau_), ErrorCode::InvalidArgument,
          "savif: step size must be positive");
  const double half = 0.5 * tau_;
  elems_.e11_tau = table_.get(ExpBlock::E11, tau_);
  elems_.e12_tau = table_.get(ExpBlock::E12, tau_);
  elems_.e21_tau = table_.get(ExpBlock::E21, tau_);
  elems_.e22_tau = table_.get(ExpBlock::E22, tau_);
  elems_.e12_half = table_.get(ExpBlock::E12, half);
  elems_.e22_half = table_.get(ExpBlock::E22, half);
  elems_.e21_half = table_.get(ExpBlock::E21, half);
  elems_.e21_mhalf = table_.get(ExpBlock::E21, -half);
  elems_.e22_mhalf = table_.get(ExpBlock::E22, -half);
}

void SavIfStepper::set_previous_u(const Field& u_prev) {
  u_prev_ = u_prev.to(Repr::Spectral);
}

SavState SavIfStepper::step(const SavState& state) {
  const Field u_hat = state.u.to(Repr::Spectral);
  const Field v_hat = state.v.to(Repr::Spectral);

  // u~: startup rule on the first step, midpoint extrapolation afterwards.
  Field util_hat =
      u_prev_ ? extrapolate(u_hat, *u_prev_) : u_hat;
  Field f_hat = Field::zeros(params_.grid, Repr::Spectral);
  if (!params_.nonlinear_off)
    f_hat = f_N(util_hat.dst_inverse(), params_.c0).dst_forward();

  // Known part: linear flow plus the midpoint source quadrature.
  Field u1 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e11_tau->accumulate(Complex(1.0), u_hat, u1);
  elems_.e12_tau->accumulate(Complex(1.0), v_hat, u1);
  Field v1 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e21_tau->accumulate(Complex(1.0), u_hat, v1);
  elems_.e22_tau->accumulate(Complex(1.0), v_hat, v1);
  if (params_.has_source()) {
    const double t_mid = state.t + 0.5 * tau_;
    const Field s_hat =
        Field::sample(params_.grid,
                      [&](double x, double y) {
                        return params_.source(x, y, t_mid);
                      })
            .dst_forward();
    elems_.e12_half->accumulate(Complex(tau_), s_hat, u1);
    elems_.e22_half->accumulate(Complex(tau_), s_hat, v1);
  }

  // r-dependent increments.
  const Complex minus_tau_beta(-tau_ * params_.beta);
  Field u2 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e12_half->accumulate(minus_tau_beta, f_hat, u2);
  Field v2 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e22_half->accumulate(minus_tau_beta, f_hat, v2);

  // Unhalved four-term sums, so r^{n+1/2} = (4 r^n + tau b1)/(4 - tau b2).
  Field acc1 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e21_half->accumulate(Complex(1.0), u_hat, acc1);
  elems_.e21_mhalf->accumulate(Complex(1.0), u1, acc1);
  elems_.e22_half->accumulate(Complex(1.0), v_hat, acc1);
  elems_.e22_mhalf->accumulate(Complex(1.0), v1, acc1);
  const double b1 = inner_l2_spectral(f_hat, acc1).real();

  Field acc2 = Field::zeros(params_.grid, Repr::Spectral);
  elems_.e21_mhalf->accumulate(Complex(1.0), u2, acc2);
  elems_.e22_mhalf->accumulate(Complex(1.0), v2, acc2);
  const double b2 = inner_l2_spectral(f_hat, acc2).real();

  const double denominator = 4.0 - tau_ * b2;
  last_denominator_ = denominator;
  min_denominator_ = std::min(min_denominator_, std::abs(denominator));
  require(std::abs(denominator) >= kDegenerateTol, ErrorCode::SolveDegenerate,
          "savif: update-r denominator |4 - tau*b2| below 1e-10; "
          "the step size is too large for this state");
  const double rho = (4.0 * state.r + tau_ * b1) / denominator;

  u1.axpy(Complex(rho), u2);
  v1.axpy(Complex(rho), v2);
  SavState next{std::move(u1), std::move(v1), 2.0 * rho - state.r,
                state.t + tau_};
  require(next.u.all_finite() && next.v.all_finite() &&
              std::isfinite(next.r),
          ErrorCode::NonFinite, "savif: step produced non-finite values");

  u_prev_ = u_hat;
  return next;
}

}  // namespace nlsw
