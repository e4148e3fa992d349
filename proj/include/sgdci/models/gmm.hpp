#pragma once

#include <cstdint>

#include "sgdci/linalg.hpp"
#include "sgdci/models/oracle_covariance.hpp"
#include "sgdci/rng.hpp"

namespace sgdci::models {

/// One stream element z = (y, xi): a mixture draw and the gradient
/// disturbance.
struct GmmSample {
  Vector y;
  Vector xi;
};

/// Symmetric two-component Gaussian mixture 0.5 N(theta_opt, s2 I) +
/// 0.5 N(-theta_opt, s2 I) with known s2, fitted by stochastic-gradient EM.
///
/// Per-sample gradient:  (theta + (1 - 2 phi(y, theta)) y) / s2 + xi
/// Per-sample objective: (|theta|^2/2 + <y,theta> - 2 s(<y,theta>)) / s2 + <xi,theta>
/// with s(t) = (s2/2) log((1 + exp(2t/s2)) / 2). The <y,theta> term has zero
/// mean, so the population gradient is unchanged.
class GmmModel {
 public:
  using Sample = GmmSample;

  GmmModel(Vector theta_opt, double sigma2 = 1.0, double sigma_xi2 = 0.0);

  /// theta_opt = s * e_1 in dimension d.
  static GmmModel with_signal(Eigen::Index d, double s, double sigma2 = 1.0, double sigma_xi2 = 0.0);

  Eigen::Index dim() const { return theta_opt_.size(); }
  const Vector& theta_opt() const { return theta_opt_; }
  double sigma2() const { return sigma2_; }
  double sigma_xi2() const { return sigma_xi2_; }

  /// Fair coin picks the component; xi ~ N(0, s_xi^2 I), or exactly zero
  /// (without touching the RNG) when s_xi^2 = 0.
  Sample draw(Rng& rng) const;

  void gradient(const Vector& theta, const Sample& z, Vector& out) const;
  Vector gradient(const Vector& theta, const Sample& z) const;
  double objective(const Vector& theta, const Sample& z) const;

 private:
  Vector theta_opt_;
  double sigma2_;
  double sigma_xi2_;
};

/// Mixture draw y = sign * theta_opt + sigma * N(0, I).
Vector gmm_sample(const GmmModel& model, Rng& rng);

/// Responsibility 1 / (1 + exp(-2 <y,theta> / s2)), stable for large |<y,theta>|.
double gmm_phi(const Vector& y, const Vector& theta, double sigma2);

/// s(t) = int_0^t (1 + exp(-2u/s2))^{-1} du in closed form.
double gmm_s(double t, double sigma2);

Vector gmm_stochastic_gradient(const GmmModel& model, const Vector& theta, const Vector& y, const Vector& xi);
double gmm_sample_objective(const GmmModel& model, const Vector& theta, const Vector& y, const Vector& xi);

/// Monte-Carlo estimate of the population Hessian
///   (1/s2) (I - (1/s2) E[y y^T sech^2(<y,theta>/s2)])
/// over n_mc mixture draws, symmetrized. `stderr_out`, when given, receives
/// the entrywise standard errors.
Matrix gmm_population_hessian(const GmmModel& model, const Vector& theta, std::uint64_t n_mc, Rng& rng,
                              Matrix* stderr_out = nullptr);

/// A and U = E[grad grad^T] / m at theta_opt by Monte Carlo, plus the
/// sandwich. The xi disturbance contributes s_xi^2 I to U exactly.
OracleCovariance gmm_oracle_covariance(const GmmModel& model, std::size_t batch_size, std::uint64_t n_mc, Rng& rng);

}  // namespace sgdci::models
