#include "sgdci/sgd_core.hpp"

#include <cmath>
#include <iostream>

namespace sgdci {

StepSchedule StepSchedule::make(double scale, double alpha, RangeCheck check) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ContractViolation("StepSchedule: scale must be > 0");
  if (!std::isfinite(alpha)) throw ContractViolation("StepSchedule: alpha must be finite");
  if (!(alpha > 0.5 && alpha < 1.0)) {
    if (check == RangeCheck::Strict) throw ContractViolation("StepSchedule: alpha must lie in (0.5, 1)");
    std::clog << "warning: step exponent alpha=" << alpha
              << " is outside (0.5, 1); averaging guarantees do not apply\n";
  }
  return StepSchedule{scale, alpha};
}

double step_size(const StepSchedule& schedule, std::uint64_t n) {
  if (n == 0) throw ContractViolation("step_size: n must be >= 1");
  return schedule.scale * std::pow(static_cast<double>(n), -schedule.alpha);
}

void advance_iterate(Vector& theta, Vector& theta_bar, std::uint64_t n, double coef, const Vector& direction) {
  theta -= coef * direction;
  const double count = static_cast<double>(n) + 1.0;
  theta_bar = (count * theta_bar + theta) / (count + 1.0);
}

void sgd_step(SgdState& state, const Vector& gradient, double gamma) {
  if (gradient.size() != state.theta.size()) throw DimensionMismatch("sgd_step: gradient has wrong length");
  advance_iterate(state.theta, state.theta_bar, state.n, gamma, gradient);
  ++state.n;
}

}  // namespace sgdci
