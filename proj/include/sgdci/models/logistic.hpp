#pragma once

#include <cstdint>
#include <functional>

#include "sgdci/linalg.hpp"
#include "sgdci/models/oracle_covariance.hpp"
#include "sgdci/rng.hpp"

namespace sgdci::models {

/// Logistic regression on a fixed design with the concave penalty
/// lambda * sum_j theta_j^2 / (1 + theta_j^2):
///
///   F_M(theta) = (1/M) sum_i log(1 + exp(-y_i x_i^T theta)) + lambda R(theta)
///
/// The randomness of SGD comes only from the sampled row index. Indices are
/// zero-based here.
class LogisticModel {
 public:
  using Sample = std::size_t;

  LogisticModel(RowMatrix x, Vector y, double lambda = 0.0);

  Eigen::Index dim() const { return x_.cols(); }
  std::size_t rows() const { return static_cast<std::size_t>(x_.rows()); }
  const RowMatrix& design() const { return x_; }
  const Vector& labels() const { return y_; }
  double lambda() const { return lambda_; }
  LogisticModel with_lambda(double lambda) const { return LogisticModel(x_, y_, lambda); }

  /// Uniform index in [0, M), with replacement.
  Sample draw(Rng& rng) const;

  void gradient(const Vector& theta, Sample i, Vector& out) const;
  Vector gradient(const Vector& theta, Sample i) const;
  double objective(const Vector& theta, Sample i) const;

  double full_objective(const Vector& theta) const;
  Vector full_gradient(const Vector& theta) const;
  Matrix hessian(const Vector& theta) const;

 private:
  void check_index(Sample i) const;
  void add_penalty_gradient(const Vector& theta, Vector& out) const;

  RowMatrix x_;
  Vector y_;
  double lambda_;
};

/// Covariance descriptor for the generated design, kept so a dataset
/// snapshot records how it was made.
struct DesignCovariance {
  enum class Kind { Identity, Toeplitz, Explicit };
  Kind kind = Kind::Identity;
  double rho = 0.0;
  Matrix explicit_matrix;

  Matrix matrix(Eigen::Index d) const;
};

/// rho^|i-j|.
Matrix toeplitz_cov(Eigen::Index d, double rho);

/// Rows x_i ~ N(0, Sigma_X) through the symmetric square root of Sigma_X;
/// labels with P(y = +1 | x) = 1 / (1 + exp(-theta_s^T x)). lambda is 0.
LogisticModel logistic_generate_data(Eigen::Index d, std::size_t m_rows, const Vector& theta_s,
                                     const Matrix& sigma_x, Rng& rng);

Vector logistic_single_gradient(const LogisticModel& model, const Vector& theta, std::size_t i);
Vector logistic_full_gradient(const LogisticModel& model, const Vector& theta);
Matrix logistic_hessian(const LogisticModel& model, const Vector& theta);

struct GradientDescentOptions {
  double step = 0.5;
  double tol = 1e-10;
  std::uint64_t max_iter = 1'000'000;
  // Called with every iterate, starting with the initial point.
  std::function<void(const Vector&)> observer;
};

/// Fixed-step gradient descent until |grad F_M| <= tol. Throws NonConvergence
/// with the final gradient norm after max_iter steps.
Vector logistic_find_optimum(const LogisticModel& model, const Vector& init, const GradientDescentOptions& options = {});

/// Exact A = Hessian and U = (1/M) sum_i g_i g_i^T / m at theta_opt.
/// Requires |grad F_M(theta_opt)| <= 1e-8.
OracleCovariance logistic_oracle_covariance(const LogisticModel& model, const Vector& theta_opt,
                                            std::size_t batch_size);

}  // namespace sgdci::models
