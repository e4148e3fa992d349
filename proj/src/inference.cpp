#include "sgdci/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sgdci/errors.hpp"

namespace sgdci {

namespace {

constexpr double kQuadFormTolerance = 1e-12;

void check_level(double q, const char* who) {
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation(std::string(who) + ": q must lie in (0, 1)");
}

// Acklam's lower-tail rational approximation, relative error ~1.15e-9.
double acklam_lower(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double t = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double t = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * t + c[1]) * t + c[2]) * t + c[3]) * t + c[4]) * t + c[5]) /
           ((((d[0] * t + d[1]) * t + d[2]) * t + d[3]) * t + 1.0);
  }
  const double u = p - 0.5;
  const double r = u * u;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

ConfidenceInterval normal_interval(const Vector& a, const Vector& theta_bar, const Matrix& sigma, std::uint64_t n,
                                   double q, CiMethod method) {
  check_level(q, "normal interval");
  if (n == 0) throw ContractViolation("normal interval: N must be >= 1");
  if (a.size() != theta_bar.size() || sigma.rows() != a.size() || sigma.cols() != a.size())
    throw DimensionMismatch("normal interval: dimensions of a, theta_bar and Sigma disagree");
  double quad = a.dot(sigma * a);
  if (quad < 0.0) {
    if (quad < -kQuadFormTolerance) throw DegenerateCovariance("normal interval: a^T Sigma a is negative");
    quad = 0.0;
  }
  const double center = a.dot(theta_bar);
  const double half = normal_quantile(q / 2.0) * std::sqrt(quad / static_cast<double>(n));
  return {center - half, center + half, method, 1.0 - q, 0};
}

}  // namespace

std::string_view to_string(CiMethod method) {
  switch (method) {
    case CiMethod::Cov:
      return "Cov";
    case CiMethod::Bootstrap:
      return "Bootstrap";
    case CiMethod::Oracle:
      return "Oracle";
  }
  return "?";
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ContractViolation("normal_quantile: p must lie in (0, 1)");
  // Solve Phi(x) = p for the lower quantile x, then flip the sign.
  double x = acklam_lower(p);
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return -x;
}

ConfidenceInterval cov_ci(const Vector& a, const Vector& theta_bar, const Matrix& sigma, std::uint64_t n, double q) {
  return normal_interval(a, theta_bar, sigma, n, q, CiMethod::Cov);
}

ConfidenceInterval oracle_ci(const Vector& a, const Vector& theta_bar, const Matrix& oracle_sigma, std::uint64_t n,
                             double q) {
  return normal_interval(a, theta_bar, oracle_sigma, n, q, CiMethod::Oracle);
}

double empirical_quantile_inverse(std::span<const double> values, double q) {
  if (values.empty()) throw NoAcceptedReplicas("empirical_quantile_inverse: no values");
  check_level(q, "empirical_quantile_inverse");
  const std::size_t k_total = values.size();
  const double total = static_cast<double>(k_total);
  // Smallest rank k with k/K >= q, evaluated with the same floating-point
  // comparison the definition uses.
  auto rank = static_cast<std::size_t>(std::ceil(q * total));
  rank = std::clamp<std::size_t>(rank, 1, k_total);
  while (rank > 1 && static_cast<double>(rank - 1) / total >= q) --rank;
  while (rank < k_total && static_cast<double>(rank) / total < q) ++rank;

  std::vector<double> sorted(values.begin(), values.end());
  const auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(sorted.begin(), nth, sorted.end());
  return *nth;
}

ConfidenceInterval bootstrap_ci(const Vector& a, const Vector& theta_bar, std::span<const double> projections,
                                std::uint64_t n, double q) {
  if (projections.empty()) throw NoAcceptedReplicas("bootstrap_ci: no accepted replicas");
  check_level(q, "bootstrap_ci");
  if (n == 0) throw ContractViolation("bootstrap_ci: N must be >= 1");
  if (a.size() != theta_bar.size()) throw DimensionMismatch("bootstrap_ci: a and theta_bar differ in length");
  const double center = a.dot(theta_bar);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double lo = empirical_quantile_inverse(projections, q / 2.0);
  const double hi = empirical_quantile_inverse(projections, 1.0 - q / 2.0);
  return {center + lo / root_n, center + hi / root_n, CiMethod::Bootstrap, 1.0 - q, projections.size()};
}

}  // namespace sgdci
