#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "sgdci/linalg.hpp"

namespace sgdci {

enum class CiMethod { Cov, Bootstrap, Oracle };

std::string_view to_string(CiMethod method);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  CiMethod method = CiMethod::Cov;
  double level = 0.95;           // 1 - q
  std::size_t accepted = 0;      // replicas that entered the estimate; 0 for Oracle

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Standard normal CDF.
double normal_cdf(double z);

/// Upper quantile: returns z with Phi(z) = 1 - p, so normal_quantile(0.025)
/// is 1.95996... Rational approximation followed by one Halley correction
/// against the erfc-based CDF.
double normal_quantile(double p);

/// a^T theta_bar +- z_{q/2} sqrt(a^T Sigma a / N). Quadratic forms that are
/// negative by no more than 1e-12 are treated as zero.
ConfidenceInterval cov_ci(const Vector& a, const Vector& theta_bar, const Matrix& sigma, std::uint64_t n, double q);

/// Same interval with a covariance supplied from outside (the true sandwich).
ConfidenceInterval oracle_ci(const Vector& a, const Vector& theta_bar, const Matrix& oracle_sigma, std::uint64_t n,
                             double q);

/// inf{x : #{v <= x} / K >= q} over the K values, i.e. the ceil(qK)-th order
/// statistic.
double empirical_quantile_inverse(std::span<const double> values, double q);

/// [a^T theta_bar + Q(q/2)/sqrt N, a^T theta_bar + Q(1-q/2)/sqrt N] with Q the
/// empirical quantile of the already-scaled projections.
ConfidenceInterval bootstrap_ci(const Vector& a, const Vector& theta_bar, std::span<const double> projections,
                                std::uint64_t n, double q);

}  // namespace sgdci
