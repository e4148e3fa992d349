#include "sgdci/models/finite_diff.hpp"

#include <algorithm>
#include <cmath>

#include "sgdci/errors.hpp"

namespace sgdci::models {

double finite_diff_check(const ScalarFn& objective, const VectorFn& gradient, const Vector& theta, double h) {
  if (!(h > 0.0)) throw ContractViolation("finite_diff_check: h must be > 0");
  const Vector g = gradient(theta);
  if (g.size() != theta.size()) throw DimensionMismatch("finite_diff_check: gradient has wrong length");
  double worst = 0.0;
  Vector probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + h;
    const double up = objective(probe);
    probe[j] = theta[j] - h;
    const double down = objective(probe);
    probe[j] = theta[j];
    const double fd = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - g[j]) / std::max(1.0, std::abs(g[j])));
  }
  return worst;
}

double finite_diff_jacobian_check(const VectorFn& gradient, const MatrixFn& hessian, const Vector& theta, double h) {
  if (!(h > 0.0)) throw ContractViolation("finite_diff_jacobian_check: h must be > 0");
  const Matrix hess = hessian(theta);
  if (hess.rows() != theta.size() || hess.cols() != theta.size())
    throw DimensionMismatch("finite_diff_jacobian_check: Hessian has wrong size");
  double worst = 0.0;
  Vector probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + h;
    const Vector up = gradient(probe);
    probe[j] = theta[j] - h;
    const Vector down = gradient(probe);
    probe[j] = theta[j];
    const Vector fd = (up - down) / (2.0 * h);
    for (Eigen::Index i = 0; i < theta.size(); ++i)
      worst = std::max(worst, std::abs(fd[i] - hess(i, j)) / std::max(1.0, std::abs(hess(i, j))));
  }
  return worst;
}

}  // namespace sgdci::models
