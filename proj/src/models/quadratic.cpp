#include "sgdci/models/quadratic.hpp"

#include "sgdci/errors.hpp"

namespace sgdci::models {

QuadraticModel::QuadraticModel(Matrix hessian, Vector optimum, Matrix noise_cov)
    : hessian_(std::move(hessian)), optimum_(std::move(optimum)), noise_cov_(std::move(noise_cov)) {
  const auto d = optimum_.size();
  if (d < 1) throw ContractViolation("QuadraticModel: dimension must be >= 1");
  if (hessian_.rows() != d || hessian_.cols() != d || noise_cov_.rows() != d || noise_cov_.cols() != d)
    throw DimensionMismatch("QuadraticModel: H and S must be d x d");
  if (min_eigenvalue(0.5 * (hessian_ + hessian_.transpose())) <= 0.0)
    throw ContractViolation("QuadraticModel: H must be positive definite");
  noisy_ = !noise_cov_.isZero(0.0);
  if (noisy_) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(noise_cov_);
    if (eig.eigenvalues().minCoeff() < 0.0) throw ContractViolation("QuadraticModel: S must be PSD");
    noise_factor_ = eig.operatorSqrt();
  }
}

QuadraticModel QuadraticModel::noiseless(Vector optimum) {
  const auto d = optimum.size();
  return QuadraticModel(Matrix::Identity(d, d), std::move(optimum), Matrix::Zero(d, d));
}

QuadraticModel::Sample QuadraticModel::draw(Rng& rng) const {
  if (!noisy_) return Vector::Zero(dim());
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector z(dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  return noise_factor_ * z;
}

void QuadraticModel::gradient(const Vector& theta, const Sample& eps, Vector& out) const {
  out.noalias() = hessian_ * (theta - optimum_);
  out -= eps;
}

double QuadraticModel::objective(const Vector& theta, const Sample& eps) const {
  const Vector r = theta - optimum_;
  return 0.5 * r.dot(hessian_ * r) - eps.dot(theta);
}

OracleCovariance QuadraticModel::oracle(std::size_t batch_size) const {
  if (batch_size == 0) throw ContractViolation("QuadraticModel::oracle: batch size must be >= 1");
  return make_oracle_covariance(hessian_, noise_cov_ / static_cast<double>(batch_size));
}

}  // namespace sgdci::models
