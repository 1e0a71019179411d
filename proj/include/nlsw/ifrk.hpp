#ifndef NLSW_IFRK_HPP
#define NLSW_IFRK_HPP

#include <vector>

#include "nlsw/expop.hpp"
#include "nlsw/integrator.hpp"

namespace nlsw {

/*
 SAV integrating-factor Runge-Kutta steppers. With predictions u~^{ni} of
 u(t_n + c_i tau) (fixed-point sweeps of the frozen-coefficient stage map)
 and f~^i = f_N(u~^{ni}) held fixed, the stage relations

     u^{ni} = e11(c_i tau) u^n + e12(c_i tau) v^n
                - tau*beta sum_j a_ij e12((c_i-c_j)tau) r^{nj} f~^j
     v^{ni} = e21(c_i tau) u^n + e22(c_i tau) v^n
                - tau*beta sum_j a_ij e22((c_i-c_j)tau) r^{nj} f~^j
     r^{ni} = r^n + tau sum_j a_ij Re( f~^j, v^{nj} )

 are linear; eliminating v^{nj} leaves an s x s real system for the r^{ni}.
 The update mirrors the stages with weights b_i and blocks at (1-c_i)tau.
 When b_i a_ij + b_j a_ji = b_i b_j the scheme conserves the SAV energy
 exactly; Gauss collocation tableaus satisfy this with order 2s.
*/

struct ButcherTableau {
  int s = 0;
  std::vector<double> a;  // s*s, row-major
  std::vector<double> b;
  std::vector<double> c;
  int order = 0;

  double a_at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * s + j];
  }
  /// max_{i,j} |b_i a_ij + b_j a_ji - b_i b_j|
  double conservation_residual() const;
  /// max(|sum_j a_ij - c_i|, |sum_i b_i - 1|)
  double consistency_residual() const;
  void validate() const;
};

/// Gauss collocation tableau of order 2s; s in {2, 3}.
ButcherTableau gauss_tableau(int s);

/// Eq. (RK-coef) residual, exposed for tableau gating.
double check_conservation_condition(const ButcherTableau& tableau);

struct IfrkOptions {
  double predictor_tol = 1e-13;
  int predictor_max_iter = 0;  // 0 means tableau order + 2
  /// Reproduce the printed predictor (plain g, no beta factor).
  bool strict_predictor = false;
};

/// Solve the s x s stage system for the scalars r^{ni}, given the frozen
/// f~ stages and the known (linear + source) parts v_lin of the stage
/// velocities; all fields spectral.
std::vector<double> solve_stage_r(const std::vector<Field>& f_tilde_hat,
                                  const std::vector<Field>& v_lin_hat,
                                  double r_n, const ButcherTableau& tableau,
                                  double tau, double beta, ExpTable& table);

class IfrkStepper : public Integrator {
public:
  IfrkStepper(const ProblemParams& params, double tau, ButcherTableau tableau,
              IfrkOptions options = {});

  SavState step(const SavState& state) override;

  double tau() const override { return tau_; }
  int last_predictor_iters() const override { return last_predictor_iters_; }
  const ButcherTableau& tableau() const { return tableau_; }
  const IfrkOptions& options() const { return options_; }

  /// Fixed-point predictions of u(t_n + c_i tau); returned physical.
  std::vector<Field> predict_stages(const Field& u_hat, const Field& v_hat,
                                    double t_n);

  static constexpr double kOverflowGuard = 1e100;

private:
  std::vector<Field> sample_sources(double t_n) const;  // spectral, or empty

  ProblemParams params_;
  double tau_;
  ButcherTableau tableau_;
  IfrkOptions options_;
  ExpTable table_;
  int max_iter_;
  int last_predictor_iters_ = 0;
};

}  // namespace nlsw

#endif
