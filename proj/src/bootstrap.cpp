#include "sgdci/bootstrap.hpp"

#include <cmath>
#include <numbers>

namespace sgdci {

double sample_multiplier(const MultiplierDistribution& dist, Rng& rng) {
  switch (dist.kind) {
    case MultiplierDistribution::Kind::UniformSym: {
      constexpr double r = std::numbers::sqrt3;
      std::uniform_real_distribution<double> u(1.0 - r, 1.0 + r);
      return u(rng);
    }
    case MultiplierDistribution::Kind::ExponentialUnit: {
      std::exponential_distribution<double> e(1.0);
      return e(rng);
    }
    case MultiplierDistribution::Kind::Constant:
      return dist.value;
  }
  return dist.value;
}

ReplicaEnsemble::ReplicaEnsemble(const SgdState& main0, std::size_t replicas, MultiplierDistribution dist,
                                 std::uint64_t weight_seed, CovarianceMode mode)
    : dist_(dist), mode_(mode), n_(main0.n) {
  if (replicas == 0) throw ContractViolation("ReplicaEnsemble: need at least one replica");
  if (main0.n != 0) throw ContractViolation("ReplicaEnsemble: replicas must start together with the main path");
  const auto d = main0.dim();
  replicas_.reserve(replicas);
  for (std::size_t b = 0; b < replicas; ++b) {
    ReplicaState r{main0.theta, main0.theta, Vector::Zero(d), std::nullopt, make_rng(weight_seed, Stream::Weights, b)};
    if (mode_ == CovarianceMode::Recursion) r.sigma_hat = Matrix::Identity(d, d);
    replicas_.push_back(std::move(r));
  }
}

void ReplicaEnsemble::absorb(ReplicaState& r, const SgdState& main_before, const SgdState& main_after, double coef,
                             const Vector& grad) {
  const std::uint64_t n = main_before.n;
  if (mode_ == CovarianceMode::Recursion) prev_bar_diff_ = r.theta_bar - main_before.theta_bar;

  advance_iterate(r.theta, r.theta_bar, n, coef, grad);
  delta_ = r.theta - main_after.theta;
  r.diff_sum += delta_;

  if (mode_ == CovarianceMode::Recursion) {
    const double nn = static_cast<double>(n);
    Matrix& s = *r.sigma_hat;
    s = (nn / (nn + 1.0)) * (s + prev_bar_diff_ * delta_.transpose() + delta_ * prev_bar_diff_.transpose());
    s += (1.0 / (nn + 1.0)) * (delta_ * delta_.transpose());
  }
}

Matrix replica_covariance(const ReplicaState& replica, std::uint64_t n, CovarianceMode mode) {
  if (n == 0) throw ContractViolation("replica_covariance: N must be >= 1");
  if (mode == CovarianceMode::Recursion) {
    if (!replica.sigma_hat) throw ContractViolation("replica_covariance: recursion matrix was not maintained");
    return *replica.sigma_hat;
  }
  return (replica.diff_sum * replica.diff_sum.transpose()) / static_cast<double>(n);
}

bool replica_accepted(const ReplicaState& replica, const SgdState& main, double r0) {
  return (replica.theta - main.theta).norm() <= r0;
}

CovarianceAggregate aggregate_covariance(const ReplicaEnsemble& ensemble, const SgdState& main, double r0) {
  if (ensemble.n() != main.n) throw ContractViolation("aggregate_covariance: ensemble and main path out of step");
  const auto d = main.dim();
  CovarianceAggregate out{Matrix::Identity(d, d), 0};
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& r : ensemble.replicas()) {
    if (!replica_accepted(r, main, r0)) continue;
    sum += replica_covariance(r, main.n, ensemble.mode());
    ++out.accepted;
  }
  if (out.accepted > 0) out.sigma = sum / static_cast<double>(out.accepted);
  return out;
}

std::vector<double> collect_projections(const ReplicaEnsemble& ensemble, const SgdState& main, const Vector& a,
                                        double r0) {
  if (a.size() != main.dim()) throw DimensionMismatch("collect_projections: functional has wrong length");
  if (ensemble.n() != main.n) throw ContractViolation("collect_projections: ensemble and main path out of step");
  const double root_n = std::sqrt(static_cast<double>(main.n));
  std::vector<double> out;
  out.reserve(ensemble.size());
  for (const auto& r : ensemble.replicas()) {
    if (!replica_accepted(r, main, r0)) continue;
    out.push_back(root_n * a.dot(r.theta_bar - main.theta_bar));
  }
  return out;
}

}  // namespace sgdci
