#include "sgdci/models/gmm.hpp"

#include <cmath>
#include <numbers>

#include "sgdci/errors.hpp"

namespace sgdci::models {

namespace {

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

// sech^2(u) without overflowing cosh.
double sech2(double u) {
  const double e = std::exp(-2.0 * std::abs(u));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

Vector standard_normal(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

// Accumulates E[X] and entrywise standard errors for a stream of matrices.
struct MomentAccumulator {
  explicit MomentAccumulator(Eigen::Index d) : sum(Matrix::Zero(d, d)), sum_sq(Matrix::Zero(d, d)) {}
  void add(const Matrix& x) {
    sum += x;
    sum_sq += x.cwiseProduct(x);
    ++count;
  }
  Matrix mean() const { return sum / static_cast<double>(count); }
  Matrix stderr_of_mean() const {
    const double n = static_cast<double>(count);
    const Matrix m = mean();
    Matrix var = (sum_sq / n - m.cwiseProduct(m)).cwiseMax(0.0) * (n / std::max(n - 1.0, 1.0));
    return (var / n).cwiseSqrt();
  }
  Matrix sum;
  Matrix sum_sq;
  std::uint64_t count = 0;
};

}  // namespace

GmmModel::GmmModel(Vector theta_opt, double sigma2, double sigma_xi2)
    : theta_opt_(std::move(theta_opt)), sigma2_(sigma2), sigma_xi2_(sigma_xi2) {
  if (theta_opt_.size() == 0) throw ContractViolation("GmmModel: dimension must be >= 1");
  if (!(sigma2_ > 0.0)) throw ContractViolation("GmmModel: sigma2 must be > 0");
  if (!(sigma_xi2_ >= 0.0)) throw ContractViolation("GmmModel: sigma_xi2 must be >= 0");
}

GmmModel GmmModel::with_signal(Eigen::Index d, double s, double sigma2, double sigma_xi2) {
  if (d < 1) throw ContractViolation("GmmModel: dimension must be >= 1");
  Vector opt = Vector::Zero(d);
  opt[0] = s;
  return GmmModel(std::move(opt), sigma2, sigma_xi2);
}

GmmModel::Sample GmmModel::draw(Rng& rng) const {
  Sample z;
  z.y = gmm_sample(*this, rng);
  if (sigma_xi2_ > 0.0) {
    z.xi = std::sqrt(sigma_xi2_) * standard_normal(dim(), rng);
  } else {
    z.xi = Vector::Zero(dim());
  }
  return z;
}

void GmmModel::gradient(const Vector& theta, const Sample& z, Vector& out) const {
  // 1 - 2 phi(y, theta) = -tanh(<y,theta>/s2)
  const double tilt = std::tanh(z.y.dot(theta) / sigma2_);
  out = (theta - tilt * z.y) / sigma2_ + z.xi;
}

Vector GmmModel::gradient(const Vector& theta, const Sample& z) const {
  Vector out(dim());
  gradient(theta, z, out);
  return out;
}

double GmmModel::objective(const Vector& theta, const Sample& z) const {
  const double t = z.y.dot(theta);
  return (0.5 * theta.squaredNorm() + t - 2.0 * gmm_s(t, sigma2_)) / sigma2_ + z.xi.dot(theta);
}

Vector gmm_sample(const GmmModel& model, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  const double sign = coin(rng) ? 1.0 : -1.0;
  return sign * model.theta_opt() + std::sqrt(model.sigma2()) * standard_normal(model.dim(), rng);
}

double gmm_phi(const Vector& y, const Vector& theta, double sigma2) {
  const double u = -2.0 * y.dot(theta) / sigma2;
  if (u > 0.0) {
    const double e = std::exp(-u);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(u));
}

double gmm_s(double t, double sigma2) {
  return 0.5 * sigma2 * (softplus(2.0 * t / sigma2) - std::numbers::ln2);
}

Vector gmm_stochastic_gradient(const GmmModel& model, const Vector& theta, const Vector& y, const Vector& xi) {
  return model.gradient(theta, GmmSample{y, xi});
}

double gmm_sample_objective(const GmmModel& model, const Vector& theta, const Vector& y, const Vector& xi) {
  return model.objective(theta, GmmSample{y, xi});
}

Matrix gmm_population_hessian(const GmmModel& model, const Vector& theta, std::uint64_t n_mc, Rng& rng,
                              Matrix* stderr_out) {
  if (n_mc == 0) throw ContractViolation("gmm_population_hessian: n_mc must be >= 1");
  if (theta.size() != model.dim()) throw DimensionMismatch("gmm_population_hessian: theta has wrong length");
  const double s2 = model.sigma2();
  const auto d = model.dim();
  MomentAccumulator acc(d);
  Matrix term(d, d);
  for (std::uint64_t i = 0; i < n_mc; ++i) {
    const Vector y = gmm_sample(model, rng);
    term.noalias() = (sech2(y.dot(theta) / s2) / s2) * (y * y.transpose());
    acc.add(term);
  }
  Matrix hessian = (Matrix::Identity(d, d) - acc.mean()) / s2;
  hessian = 0.5 * (hessian + hessian.transpose());
  if (stderr_out) *stderr_out = acc.stderr_of_mean() / s2;
  return hessian;
}

OracleCovariance gmm_oracle_covariance(const GmmModel& model, std::size_t batch_size, std::uint64_t n_mc, Rng& rng) {
  if (batch_size == 0) throw ContractViolation("gmm_oracle_covariance: batch size must be >= 1");
  if (n_mc == 0) throw ContractViolation("gmm_oracle_covariance: n_mc must be >= 1");
  const auto d = model.dim();
  const Vector& opt = model.theta_opt();

  Matrix hessian_se;
  const Matrix hessian = gmm_population_hessian(model, opt, n_mc, rng, &hessian_se);

  MomentAccumulator acc(d);
  const Vector no_xi = Vector::Zero(d);
  Vector g(d);
  Matrix term(d, d);
  for (std::uint64_t i = 0; i < n_mc; ++i) {
    const GmmSample z{gmm_sample(model, rng), no_xi};
    model.gradient(opt, z, g);
    term.noalias() = g * g.transpose();
    acc.add(term);
  }
  const double m = static_cast<double>(batch_size);
  Matrix noise = acc.mean() + model.sigma_xi2() * Matrix::Identity(d, d);
  noise /= m;

  OracleCovariance out = make_oracle_covariance(hessian, noise);
  out.hessian_stderr = hessian_se;
  out.noise_stderr = acc.stderr_of_mean() / m;
  return out;
}

}  // namespace sgdci::models
