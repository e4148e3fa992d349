#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "sgdci/errors.hpp"
#include "sgdci/linalg.hpp"
#include "sgdci/rng.hpp"

namespace sgdci {

/// Robbins-Monro schedule gamma_n = scale * n^(-alpha).
struct StepSchedule {
  enum class RangeCheck { Strict, Warn };

  double scale = 1.0;
  double alpha = 0.75;

  /// Validates scale > 0 and 0.5 < alpha < 1. In Warn mode an out-of-range
  /// alpha only prints a warning, which is handy for exploring the boundary.
  static StepSchedule make(double scale, double alpha, RangeCheck check = RangeCheck::Strict);
};

/// gamma_n for n >= 1. gamma_0 is never used, so n = 0 throws.
double step_size(const StepSchedule& schedule, std::uint64_t n);

/// Iterate theta_n and its running Polyak-Ruppert average over theta_0..theta_n.
struct SgdState {
  std::uint64_t n = 0;
  Vector theta;
  Vector theta_bar;

  static SgdState start(const Vector& theta0) { return {0, theta0, theta0}; }
  Eigen::Index dim() const { return theta.size(); }
};

/// A model the engine can run: draws one sample per call and evaluates the
/// per-sample stochastic gradient at theta into a pre-sized output vector.
template <typename M>
concept ModelOracle = requires(const M& model, const Vector& theta, const typename M::Sample& sample,
                               Vector& out, Rng& rng) {
  typename M::Sample;
  { model.dim() } -> std::convertible_to<Eigen::Index>;
  { model.draw(rng) } -> std::same_as<typename M::Sample>;
  model.gradient(theta, sample, out);
};

/// Models that also expose the per-sample objective whose gradient they return.
template <typename M>
concept ObjectiveModel = ModelOracle<M> && requires(const M& model, const Vector& theta,
                                                    const typename M::Sample& sample) {
  { model.objective(theta, sample) } -> std::convertible_to<double>;
};

template <typename Sample>
using MiniBatch = std::vector<Sample>;

template <ModelOracle M>
MiniBatch<typename M::Sample> draw_batch(const M& model, std::size_t m, Rng& rng) {
  if (m == 0) throw ContractViolation("draw_batch: batch size must be >= 1");
  MiniBatch<typename M::Sample> batch;
  batch.reserve(m);
  for (std::size_t i = 0; i < m; ++i) batch.push_back(model.draw(rng));
  return batch;
}

/// Mean of the per-sample gradients over the batch, written into `out`.
/// `scratch` is a caller-owned buffer so the hot loop does not allocate.
template <ModelOracle M>
void minibatch_gradient(const M& model, const Vector& theta, const MiniBatch<typename M::Sample>& batch,
                        Vector& out, Vector& scratch) {
  if (batch.empty()) throw ContractViolation("minibatch_gradient: empty batch");
  if (theta.size() != model.dim()) throw DimensionMismatch("minibatch_gradient: theta has wrong length");
  out.setZero(theta.size());
  scratch.resize(theta.size());
  for (const auto& sample : batch) {
    model.gradient(theta, sample, scratch);
    out += scratch;
  }
  out /= static_cast<double>(batch.size());
}

template <ModelOracle M>
Vector minibatch_gradient(const M& model, const Vector& theta, const MiniBatch<typename M::Sample>& batch) {
  Vector out;
  Vector scratch;
  minibatch_gradient(model, theta, batch, out, scratch);
  return out;
}

/// theta <- theta - coef * direction, and fold the new iterate into the average so that
/// afterwards theta_bar is the mean over indices 0..n+1. Main path and
/// replicas both go through here, which keeps w = 1 replicas bitwise equal
/// to the main path.
void advance_iterate(Vector& theta, Vector& theta_bar, std::uint64_t n, double coef, const Vector& direction);

/// One SGD update theta_{n+1} = theta_n - gamma * gradient.
void sgd_step(SgdState& state, const Vector& gradient, double gamma);

/// Runs N iterations from theta0, a fresh mini-batch of size m each step,
/// using gamma_{n+1} at step n -> n+1.
template <ModelOracle M>
SgdState run_sgd(const M& model, const StepSchedule& schedule, const Vector& theta0, std::uint64_t iterations,
                 std::size_t m, Rng& rng) {
  if (iterations == 0) throw ContractViolation("run_sgd: need at least one iteration");
  if (theta0.size() != model.dim()) throw DimensionMismatch("run_sgd: theta0 has wrong length");
  SgdState state = SgdState::start(theta0);
  Vector grad;
  Vector scratch;
  for (std::uint64_t k = 0; k < iterations; ++k) {
    const auto batch = draw_batch(model, m, rng);
    minibatch_gradient(model, state.theta, batch, grad, scratch);
    sgd_step(state, grad, step_size(schedule, state.n + 1));
  }
  return state;
}

}  // namespace sgdci
