#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgdci/sgd_core.hpp"

namespace sgdci {

/// Random multiplier weights for the perturbed replicas.
///
/// UniformSym (uniform on [1 - sqrt 3, 1 + sqrt 3]) and ExponentialUnit
/// (rate 1) both have mean 1, variance 1 and a finite fourth moment.
/// Constant always returns `value`; it exists for tests that need to pin the
/// weights (value 1 collapses every replica onto the main path).
struct MultiplierDistribution {
  enum class Kind { UniformSym, ExponentialUnit, Constant };

  Kind kind = Kind::UniformSym;
  double value = 1.0;

  static MultiplierDistribution uniform() { return {Kind::UniformSym, 1.0}; }
  static MultiplierDistribution exponential() { return {Kind::ExponentialUnit, 1.0}; }
  static MultiplierDistribution constant(double v) { return {Kind::Constant, v}; }
};

double sample_multiplier(const MultiplierDistribution& dist, Rng& rng);

enum class CovarianceMode {
  Exact,           // S_N S_N^T / N from the running difference sum
  Recursion,       // literal two-line online recursion started at the identity
};

struct ReplicaState {
  Vector theta;
  Vector theta_bar;
  Vector diff_sum;                   // sum_{k=1..n} (theta_k^(b) - theta_k)
  std::optional<Matrix> sigma_hat;  // only in Recursion mode
  Rng rng;
};

/// B perturbed SGD paths that consume the main path's mini-batches.
class ReplicaEnsemble {
 public:
  /// All replicas start at main0.theta. Replica b draws its weights from
  /// make_rng(weight_seed, Stream::Weights, b), so results do not depend on
  /// the order replicas are updated in.
  ReplicaEnsemble(const SgdState& main0, std::size_t replicas, MultiplierDistribution dist,
                  std::uint64_t weight_seed, CovarianceMode mode = CovarianceMode::Exact);

  std::size_t size() const { return replicas_.size(); }
  std::uint64_t n() const { return n_; }
  CovarianceMode mode() const { return mode_; }
  const MultiplierDistribution& distribution() const { return dist_; }
  const std::vector<ReplicaState>& replicas() const { return replicas_; }
  const ReplicaState& operator[](std::size_t b) const { return replicas_[b]; }

  /// Advances every replica by one step on the shared batch.
  ///
  /// `main_before` is the main state at n (before its update) and
  /// `main_after` the state at n+1. Each replica draws a fresh weight w and
  /// steps theta^(b) -= gamma * w * g_b(theta^(b)); the difference sum then
  /// picks up theta^(b)_{n+1} - theta_{n+1}.
  template <ModelOracle M>
  void step(const SgdState& main_before, const SgdState& main_after, const M& model,
            const MiniBatch<typename M::Sample>& batch, double gamma);

 private:
  void absorb(ReplicaState& r, const SgdState& main_before, const SgdState& main_after, double coef,
              const Vector& grad);

  std::vector<ReplicaState> replicas_;
  MultiplierDistribution dist_;
  CovarianceMode mode_;
  std::uint64_t n_ = 0;
  Vector grad_;
  Vector scratch_;
  Vector delta_;
  Vector prev_bar_diff_;
};

template <ModelOracle M>
void ReplicaEnsemble::step(const SgdState& main_before, const SgdState& main_after, const M& model,
                           const MiniBatch<typename M::Sample>& batch, double gamma) {
  if (main_before.n != n_ || main_after.n != n_ + 1)
    throw ContractViolation("ReplicaEnsemble::step: main path counter does not match the ensemble");
  for (auto& r : replicas_) {
    const double w = sample_multiplier(dist_, r.rng);
    minibatch_gradient(model, r.theta, batch, grad_, scratch_);
    absorb(r, main_before, main_after, gamma * w, grad_);
  }
  ++n_;
}

template <ModelOracle M>
void ensemble_step(ReplicaEnsemble& ensemble, const SgdState& main_before, const SgdState& main_after,
                   const M& model, const MiniBatch<typename M::Sample>& batch, double gamma) {
  ensemble.step(main_before, main_after, model, batch, gamma);
}

/// Per-replica covariance estimate at N. Exact mode needs only the running
/// difference sum; Recursion returns the maintained matrix.
Matrix replica_covariance(const ReplicaState& replica, std::uint64_t n, CovarianceMode mode);

struct CovarianceAggregate {
  Matrix sigma;
  std::size_t accepted = 0;
};

/// Mean of the replica covariances over replicas whose last iterate lies
/// within r0 of the main iterate. With no survivor the result is
/// (identity, 0).
CovarianceAggregate aggregate_covariance(const ReplicaEnsemble& ensemble, const SgdState& main, double r0);

/// sqrt(N) a^T (theta_bar^(b) - theta_bar) for each accepted replica, in
/// replica order.
std::vector<double> collect_projections(const ReplicaEnsemble& ensemble, const SgdState& main, const Vector& a,
                                        double r0);

bool replica_accepted(const ReplicaState& replica, const SgdState& main, double r0);

}  // namespace sgdci
