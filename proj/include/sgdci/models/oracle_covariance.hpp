#pragma once

#include "sgdci/linalg.hpp"

namespace sgdci::models {

/// Limit covariance A^{-1} U A^{-1} of sqrt(N)(theta_bar_N - theta_opt).
struct OracleCovariance {
  Matrix hessian;   // A, Hessian of the population objective at the minimum
  Matrix noise;     // U, second moment of the (mini-batch) gradient there
  Matrix sandwich;  // A^{-1} U A^{-1}
  // Monte-Carlo standard errors of A and U entries; empty when exact.
  Matrix hessian_stderr;
  Matrix noise_stderr;
};

/// Builds the sandwich through two Cholesky solves. Throws OracleUnavailable
/// (carrying the smallest eigenvalue) when the symmetrized A is not positive
/// definite.
OracleCovariance make_oracle_covariance(const Matrix& hessian, const Matrix& noise);

double min_eigenvalue(const Matrix& symmetric);

}  // namespace sgdci::models
