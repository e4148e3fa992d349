#include "sgdci/models/oracle_covariance.hpp"

#include <sstream>

#include "sgdci/errors.hpp"

namespace sgdci::models {

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

OracleCovariance make_oracle_covariance(const Matrix& hessian, const Matrix& noise) {
  if (hessian.rows() != hessian.cols() || noise.rows() != hessian.rows() || noise.cols() != hessian.cols())
    throw DimensionMismatch("make_oracle_covariance: A and U must be square and of equal size");
  const Matrix a = 0.5 * (hessian + hessian.transpose());
  const Matrix u = 0.5 * (noise + noise.transpose());
  const double lambda_min = min_eigenvalue(a);
  Eigen::LLT<Matrix> llt(a);
  if (!(lambda_min > 0.0) || llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "oracle covariance unavailable: Hessian is not positive definite (min eigenvalue " << lambda_min << ")";
    throw OracleUnavailable(msg.str(), lambda_min);
  }
  // A^{-1} U A^{-1} = A^{-1} (A^{-1} U)^T since U and A are symmetric.
  const Matrix left = llt.solve(u);
  Matrix sandwich = llt.solve(left.transpose());
  sandwich = 0.5 * (sandwich + sandwich.transpose());
  return {a, u, sandwich, {}, {}};
}

}  // namespace sgdci::models
