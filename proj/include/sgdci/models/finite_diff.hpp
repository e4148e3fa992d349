#pragma once

#include <functional>

#include "sgdci/linalg.hpp"

namespace sgdci::models {

using ScalarFn = std::function<double(const Vector&)>;
using VectorFn = std::function<Vector(const Vector&)>;
using MatrixFn = std::function<Matrix(const Vector&)>;

/// Central differences of `objective` against the analytic `gradient`,
/// coordinate by coordinate. Returns max_j |fd_j - g_j| / max(1, |g_j|).
double finite_diff_check(const ScalarFn& objective, const VectorFn& gradient, const Vector& theta, double h);

/// Same check one order up: columns of `hessian` against central differences
/// of `gradient`.
double finite_diff_jacobian_check(const VectorFn& gradient, const MatrixFn& hessian, const Vector& theta, double h);

}  // namespace sgdci::models
