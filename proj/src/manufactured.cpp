#include "nlsw/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace nlsw {

namespace {
double sech(double s) { return 1.0 / std::cosh(s); }
}  // namespace

ManufacturedSolution::ManufacturedSolution(double alpha, double beta)
    : alpha_(alpha),
      beta_(beta),
      omega_(-std::numbers::sqrt2 * std::numbers::pi) {}

double ManufacturedSolution::phi(double x, double y) {
  return sech(x * x + y * y);
}

double ManufacturedSolution::lap_phi(double x, double y) {
  const double s = x * x + y * y;
  const double se = sech(s);
  const double dphi = -se * std::tanh(s);
  const double d2phi = se * (1.0 - 2.0 * se * se);
  return 4.0 * dphi + 4.0 * s * d2phi;
}

Complex ManufacturedSolution::u(double x, double y, double t) const {
  return phi(x, y) * std::polar(1.0, omega_ * t);
}

Complex ManufacturedSolution::u_t(double x, double y, double t) const {
  return Complex(0.0, omega_) * u(x, y, t);
}

Complex ManufacturedSolution::u_tt(double x, double y, double t) const {
  return -omega_ * omega_ * u(x, y, t);
}

Complex ManufacturedSolution::lap_u(double x, double y, double t) const {
  return lap_phi(x, y) * std::polar(1.0, omega_ * t);
}

Complex ManufacturedSolution::source(double x, double y, double t) const {
  // u_tt + i alpha u_t - Lap u + beta |u|^2 u, with |u| = phi.
  const double p = phi(x, y);
  const double radial =
      (-omega_ * omega_ - alpha_ * omega_) * p - lap_phi(x, y) +
      beta_ * p * p * p;
  return radial * std::polar(1.0, omega_ * t);
}

ProblemData example1_data(double alpha, double beta) {
  auto exact = std::make_shared<ManufacturedSolution>(alpha, beta);
  ProblemData data;
  data.u0 = [exact](double x, double y) { return exact->u(x, y, 0.0); };
  data.u1 = [exact](double x, double y) { return exact->u_t(x, y, 0.0); };
  data.source = [exact](double x, double y, double t) {
    return exact->source(x, y, t);
  };
  return data;
}

ProblemData example2_data() {
  ProblemData data;
  data.u0 = [](double x, double y) {
    const double ridge = 1.0 - x - y;
    return Complex(1.0, 1.0) * (x + y) * std::exp(-10.0 * ridge * ridge);
  };
  data.u1 = [](double, double) { return Complex(0.0, 0.0); };
  return data;
}

}  // namespace nlsw
