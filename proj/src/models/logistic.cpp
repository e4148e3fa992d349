#include "sgdci/models/logistic.hpp"

#include <cmath>
#include <sstream>

#include "sgdci/errors.hpp"

namespace sgdci::models {

namespace {

// 1 / (1 + exp(x))
double logistic_tail(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// log(1 + exp(-x))
double log1p_exp_neg(double x) { return std::max(-x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

double penalty(const Vector& theta) {
  const Eigen::ArrayXd sq = theta.array().square();
  return (sq / (1.0 + sq)).sum();
}

}  // namespace

LogisticModel::LogisticModel(RowMatrix x, Vector y, double lambda) : x_(std::move(x)), y_(std::move(y)), lambda_(lambda) {
  if (x_.rows() < 1 || x_.cols() < 1) throw ContractViolation("LogisticModel: design must be non-empty");
  if (y_.size() != x_.rows()) throw DimensionMismatch("LogisticModel: one label per design row required");
  for (Eigen::Index i = 0; i < y_.size(); ++i)
    if (y_[i] != 1.0 && y_[i] != -1.0) throw ContractViolation("LogisticModel: labels must be +1 or -1");
  if (!(lambda_ >= 0.0)) throw ContractViolation("LogisticModel: lambda must be >= 0");
}

LogisticModel::Sample LogisticModel::draw(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, rows() - 1);
  return pick(rng);
}

void LogisticModel::check_index(Sample i) const {
  if (i >= rows()) throw ContractViolation("LogisticModel: sample index out of range");
}

void LogisticModel::add_penalty_gradient(const Vector& theta, Vector& out) const {
  if (lambda_ == 0.0) return;
  out.array() += 2.0 * lambda_ * theta.array() / (1.0 + theta.array().square()).square();
}

void LogisticModel::gradient(const Vector& theta, Sample i, Vector& out) const {
  check_index(i);
  const auto row = x_.row(static_cast<Eigen::Index>(i));
  const double yi = y_[static_cast<Eigen::Index>(i)];
  const double margin = yi * row.dot(theta);
  out = (-yi * logistic_tail(margin)) * row.transpose();
  add_penalty_gradient(theta, out);
}

Vector LogisticModel::gradient(const Vector& theta, Sample i) const {
  Vector out(dim());
  gradient(theta, i, out);
  return out;
}

double LogisticModel::objective(const Vector& theta, Sample i) const {
  check_index(i);
  const auto idx = static_cast<Eigen::Index>(i);
  return log1p_exp_neg(y_[idx] * x_.row(idx).dot(theta)) + lambda_ * penalty(theta);
}

double LogisticModel::full_objective(const Vector& theta) const {
  const Vector margins = y_.cwiseProduct(x_ * theta);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) loss += log1p_exp_neg(margins[i]);
  return loss / static_cast<double>(rows()) + lambda_ * penalty(theta);
}

Vector LogisticModel::full_gradient(const Vector& theta) const {
  const Vector margins = y_.cwiseProduct(x_ * theta);
  Vector coef(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) coef[i] = -y_[i] * logistic_tail(margins[i]);
  Vector out = x_.transpose() * coef / static_cast<double>(rows());
  add_penalty_gradient(theta, out);
  return out;
}

Matrix LogisticModel::hessian(const Vector& theta) const {
  const Vector margins = y_.cwiseProduct(x_ * theta);
  Vector weight(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    const double p = logistic_tail(-margins[i]);
    weight[i] = p * (1.0 - p);
  }
  Matrix h = x_.transpose() * weight.asDiagonal() * x_ / static_cast<double>(rows());
  if (lambda_ != 0.0) {
    const Eigen::ArrayXd sq = theta.array().square();
    const Eigen::ArrayXd diag = 1.0 / (1.0 + sq).square() - 4.0 * sq / (1.0 + sq).cube();
    h.diagonal().array() += 2.0 * lambda_ * diag;
  }
  return 0.5 * (h + h.transpose());
}

Matrix DesignCovariance::matrix(Eigen::Index d) const {
  switch (kind) {
    case Kind::Identity:
      return Matrix::Identity(d, d);
    case Kind::Toeplitz:
      return toeplitz_cov(d, rho);
    case Kind::Explicit:
      if (explicit_matrix.rows() != d || explicit_matrix.cols() != d)
        throw DimensionMismatch("DesignCovariance: explicit matrix has wrong size");
      return explicit_matrix;
  }
  return Matrix::Identity(d, d);
}

Matrix toeplitz_cov(Eigen::Index d, double rho) {
  if (!(std::abs(rho) < 1.0)) throw ContractViolation("toeplitz_cov: |rho| must be < 1");
  Matrix t(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) t(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
  return t;
}

LogisticModel logistic_generate_data(Eigen::Index d, std::size_t m_rows, const Vector& theta_s, const Matrix& sigma_x,
                                     Rng& rng) {
  if (d < 1 || m_rows < 1) throw ContractViolation("logistic_generate_data: d and M must be >= 1");
  if (theta_s.size() != d || sigma_x.rows() != d || sigma_x.cols() != d)
    throw DimensionMismatch("logistic_generate_data: theta_s / Sigma_X do not match d");
  if (!sigma_x.isApprox(sigma_x.transpose(), 1e-12))
    throw ContractViolation("logistic_generate_data: Sigma_X must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma_x);
  if (eig.eigenvalues().minCoeff() <= 0.0)
    throw ContractViolation("logistic_generate_data: Sigma_X must be positive definite");
  const Matrix root = eig.operatorSqrt();

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RowMatrix x(static_cast<Eigen::Index>(m_rows), d);
  Vector y(static_cast<Eigen::Index>(m_rows));
  Vector z(d);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z[j] = normal(rng);
    x.row(i) = (root * z).transpose();
    const double p_plus = logistic_tail(-theta_s.dot(x.row(i).transpose()));
    y[i] = unit(rng) < p_plus ? 1.0 : -1.0;
  }
  return LogisticModel(std::move(x), std::move(y), 0.0);
}

Vector logistic_single_gradient(const LogisticModel& model, const Vector& theta, std::size_t i) {
  return model.gradient(theta, i);
}

Vector logistic_full_gradient(const LogisticModel& model, const Vector& theta) { return model.full_gradient(theta); }

Matrix logistic_hessian(const LogisticModel& model, const Vector& theta) { return model.hessian(theta); }

Vector logistic_find_optimum(const LogisticModel& model, const Vector& init, const GradientDescentOptions& options) {
  if (!(options.step > 0.0)) throw ContractViolation("logistic_find_optimum: step must be > 0");
  if (init.size() != model.dim()) throw DimensionMismatch("logistic_find_optimum: init has wrong length");
  Vector theta = init;
  if (options.observer) options.observer(theta);
  Vector grad = model.full_gradient(theta);
  for (std::uint64_t it = 0; it < options.max_iter; ++it) {
    if (grad.norm() <= options.tol) return theta;
    theta -= options.step * grad;
    if (options.observer) options.observer(theta);
    grad = model.full_gradient(theta);
  }
  if (grad.norm() <= options.tol) return theta;
  std::ostringstream msg;
  msg << "logistic_find_optimum: no convergence after " << options.max_iter << " iterations (|grad| = "
      << grad.norm() << ")";
  throw NonConvergence(msg.str(), grad.norm());
}

OracleCovariance logistic_oracle_covariance(const LogisticModel& model, const Vector& theta_opt,
                                            std::size_t batch_size) {
  if (batch_size == 0) throw ContractViolation("logistic_oracle_covariance: batch size must be >= 1");
  const double grad_norm = model.full_gradient(theta_opt).norm();
  if (grad_norm > 1e-8) {
    std::ostringstream msg;
    msg << "logistic_oracle_covariance: theta_opt is not stationary (|grad| = " << grad_norm << ")";
    throw ContractViolation(msg.str());
  }
  const auto d = model.dim();
  Matrix u = Matrix::Zero(d, d);
  Vector g(d);
  for (std::size_t i = 0; i < model.rows(); ++i) {
    model.gradient(theta_opt, i, g);
    u.noalias() += g * g.transpose();
  }
  u /= static_cast<double>(model.rows()) * static_cast<double>(batch_size);
  return make_oracle_covariance(model.hessian(theta_opt), u);
}

}  // namespace sgdci::models
