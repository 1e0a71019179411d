#ifndef NLSW_INTEGRATOR_HPP
#define NLSW_INTEGRATOR_HPP

#include <memory>

#include "nlsw/sav.hpp"

namespace nlsw {

/// Common surface of the time steppers. A stepper instance serves exactly one
/// trajectory (it may carry history); create one per concurrent run.
class Integrator {
public:
  virtual ~Integrator() = default;

  /// Advance the state by one step of size tau (fixed at construction).
  virtual SavState step(const SavState& state) = 0;

  virtual double tau() const = 0;
  /// Minimum |4 - tau*b2| seen so far (SAV-IF only; +inf otherwise).
  virtual double min_update_denominator() const { return kNoDenominator; }
  /// Fixed-point sweeps used by the last step (IFRK only; 0 otherwise).
  virtual int last_predictor_iters() const { return 0; }
  /// Forget trajectory history (three-level schemes restart with their
  /// startup rule).
  virtual void reset_history() {}

  static constexpr double kNoDenominator = 1e300;
};

}  // namespace nlsw

#endif
