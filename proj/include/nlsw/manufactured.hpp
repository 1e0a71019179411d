#ifndef NLSW_MANUFACTURED_HPP
#define NLSW_MANUFACTURED_HPP

#include <functional>

#include "nlsw/sav.hpp"

namespace nlsw {

/*
 Manufactured analytic solution u(x,y,t) = sech(x^2+y^2) exp(-sqrt(2) pi i t)
 forced into the NLSW by the residual source
     S = u_tt + i alpha u_t - Lap u + beta |u|^2 u.
 With phi(s) = sech(s), s = x^2+y^2 and omega = -sqrt(2) pi:
     u_t  = i omega u,   u_tt = -omega^2 u,   |u|^2 = phi^2,
     Lap phi = 4 phi'(s) + 4 s phi''(s),
     phi' = -sech(s) tanh(s),  phi'' = sech(s) (1 - 2 sech^2(s)).
*/
class ManufacturedSolution {
public:
  ManufacturedSolution(double alpha, double beta);

  Complex u(double x, double y, double t) const;
  Complex u_t(double x, double y, double t) const;
  Complex u_tt(double x, double y, double t) const;
  Complex lap_u(double x, double y, double t) const;
  Complex source(double x, double y, double t) const;

  double omega() const { return omega_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// Spatial profile sech(x^2+y^2) and its radial-variable derivatives.
  static double phi(double x, double y);
  static double lap_phi(double x, double y);

private:
  double alpha_, beta_, omega_;
};

/// Initial data (+ optional source) of one experiment setup.
struct ProblemData {
  std::function<Complex(double, double)> u0;
  std::function<Complex(double, double)> u1;
  SourceFn source;  // empty for conservative runs
};

/// Manufactured-solution setup on (-8,8)^2: u0 = sech(x^2+y^2),
/// u1 = -sqrt(2) pi i sech(x^2+y^2), source as above.
ProblemData example1_data(double alpha, double beta);

/// Conservation setup on (-32,32)^2: u0 = (1+i)(x+y) exp(-10(1-x-y)^2),
/// u1 = 0, no source.
ProblemData example2_data();

}  // namespace nlsw

#endif
