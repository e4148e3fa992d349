#pragma once

#include "sgdci/linalg.hpp"
#include "sgdci/models/oracle_covariance.hpp"
#include "sgdci/rng.hpp"

namespace sgdci::models {

/// Strongly convex test model with a known limit covariance:
///   f(theta; eps) = (theta - opt)^T H (theta - opt) / 2 - eps^T theta,
///   eps ~ N(0, S),
/// so grad f = H (theta - opt) - eps and the sandwich is H^{-1} S H^{-1} / m.
class QuadraticModel {
 public:
  using Sample = Vector;

  QuadraticModel(Matrix hessian, Vector optimum, Matrix noise_cov);

  /// H = I, S = 0: f = |theta - opt|^2 / 2 with no noise.
  static QuadraticModel noiseless(Vector optimum);

  Eigen::Index dim() const { return optimum_.size(); }
  const Matrix& hessian() const { return hessian_; }
  const Vector& optimum() const { return optimum_; }
  const Matrix& noise_cov() const { return noise_cov_; }

  Sample draw(Rng& rng) const;
  void gradient(const Vector& theta, const Sample& eps, Vector& out) const;
  double objective(const Vector& theta, const Sample& eps) const;

  OracleCovariance oracle(std::size_t batch_size) const;

 private:
  Matrix hessian_;
  Vector optimum_;
  Matrix noise_cov_;
  Matrix noise_factor_;
  bool noisy_;
};

}  // namespace sgdci::models
