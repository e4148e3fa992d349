#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sgdci/errors.hpp"
#include "sgdci/models/dataset.hpp"
#include "sgdci/models/finite_diff.hpp"
#include "sgdci/models/gmm.hpp"
#include "sgdci/models/logistic.hpp"
#include "sgdci/models/quadratic.hpp"
#include "sgdci/sgd_core.hpp"

using namespace sgdci;
using namespace sgdci::models;

namespace {

Vector random_vector(Eigen::Index d, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n01;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = scale * n01(rng);
  return v;
}

LogisticModel small_logistic(double lambda, std::uint64_t seed = 3, std::size_t rows = 200, Eigen::Index d = 4) {
  Rng rng(seed);
  Vector theta_s = Vector::Zero(d);
  theta_s.head(std::min<Eigen::Index>(2, d)).setOnes();
  return logistic_generate_data(d, rows, theta_s, Matrix::Identity(d, d), rng).with_lambda(lambda);
}

}  // namespace

// ---------------------------------------------------------------- GMM

TEST_CASE("gmm sampler") {
  GmmModel tight(Vector{{3.0, -1.0}}, 1e-12);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vector y = gmm_sample(tight, rng);
    CHECK(std::min((y - tight.theta_opt()).norm(), (y + tight.theta_opt()).norm()) < 1e-4);
  }

  const GmmModel model(Vector{{2.0, 0.0, 1.0}}, 1.5);
  const int n = 1'000'000;
  Vector sum = Vector::Zero(3);
  Matrix outer = Matrix::Zero(3, 3);
  for (int i = 0; i < n; ++i) {
    const Vector y = gmm_sample(model, rng);
    sum += y;
    outer += y * y.transpose();
  }
  const Matrix cov_true = model.theta_opt() * model.theta_opt().transpose() + 1.5 * Matrix::Identity(3, 3);
  const Vector mean = sum / n;
  for (int j = 0; j < 3; ++j) CHECK(std::abs(mean[j]) < 5.0 * std::sqrt(cov_true(j, j) / n));
  const Matrix cov = outer / n;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      // Var(y_j y_k) <= sqrt(E y_j^4 E y_k^4); a loose 5-sigma band with E y^4 <= 3 (E y^2)^2 + slack
      const double band = 5.0 * std::sqrt(4.0 * cov_true(j, j) * cov_true(k, k) / n);
      CHECK(std::abs(cov(j, k) - cov_true(j, k)) < band);
    }
}

TEST_CASE("gmm draw leaves xi at zero without noise and draws it otherwise") {
  Rng a(5);
  Rng b(5);
  const auto quiet = GmmModel::with_signal(3, 2.0);
  const auto z = quiet.draw(a);
  CHECK(z.xi.isZero(0.0));
  CHECK(z.y == gmm_sample(quiet, b));
  const auto noisy = GmmModel::with_signal(3, 2.0, 1.0, 0.25);
  CHECK(!noisy.draw(a).xi.isZero(0.0));
  CHECK_THROWS_AS(GmmModel(Vector::Ones(2), 0.0), ContractViolation);
  CHECK_THROWS_AS(GmmModel(Vector::Ones(2), 1.0, -1.0), ContractViolation);
}

TEST_CASE("gmm_phi") {
  const Vector y{{0.3, -1.2}};
  CHECK(gmm_phi(y, Vector::Zero(2), 1.0) == 0.5);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vector yy = random_vector(2, rng, 3.0);
    const Vector th = random_vector(2, rng, 3.0);
    CHECK(gmm_phi(yy, th, 1.7) + gmm_phi(-yy, th, 1.7) == doctest::Approx(1.0).epsilon(1e-15));
  }
  // <y, theta> = s2 / 2
  const double s2 = 2.0;
  CHECK(gmm_phi(Vector::Constant(1, 1.0), Vector::Constant(1, 1.0), s2) ==
        doctest::Approx(0.7310585786300049).epsilon(1e-14));
  const double big = gmm_phi(Vector::Constant(1, 100.0), Vector::Constant(1, 100.0), 1.0);
  const double small = gmm_phi(Vector::Constant(1, -100.0), Vector::Constant(1, 100.0), 1.0);
  CHECK(big == 1.0);
  CHECK(small >= 0.0);
  CHECK(std::isfinite(small));
}

TEST_CASE("gmm gradient closed forms") {
  const GmmModel model(Vector{{2.0, 1.0, 0.0}}, 0.8);
  Rng rng(3);
  const Vector y = random_vector(3, rng);
  const Vector zero = Vector::Zero(3);
  CHECK(gmm_stochastic_gradient(model, zero, y, zero).isZero(0.0));
  const Vector theta = random_vector(3, rng);
  CHECK((gmm_stochastic_gradient(model, theta, zero, zero) - theta / 0.8).norm() < 1e-15);
  // explicit formula with phi
  const Vector xi = random_vector(3, rng, 0.1);
  const Vector want = (theta + (1.0 - 2.0 * gmm_phi(y, theta, 0.8)) * y) / 0.8 + xi;
  CHECK((gmm_stochastic_gradient(model, theta, y, xi) - want).norm() < 1e-13);
}

TEST_CASE("gmm sign symmetry") {
  const GmmModel model(Vector{{1.5, -0.5}}, 1.3);
  Rng rng(4);
  const Vector zero = Vector::Zero(2);
  for (int i = 0; i < 100; ++i) {
    const Vector th = random_vector(2, rng, 2.0);
    const Vector y = random_vector(2, rng, 2.0);
    const Vector g = gmm_stochastic_gradient(model, th, y, zero);
    CHECK((gmm_stochastic_gradient(model, -th, -y, zero) + g).norm() <= 1e-14 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("gmm objective") {
  const GmmModel model(Vector{{2.0, 1.0}}, 0.7);
  Rng rng(5);
  CHECK(gmm_sample_objective(model, Vector::Zero(2), random_vector(2, rng), random_vector(2, rng)) == 0.0);
  for (double t : {0.0, 0.3, -2.0, 15.0, 400.0}) {
    CHECK(gmm_s(t, 0.7) - gmm_s(-t, 0.7) == doctest::Approx(t).epsilon(1e-12));
    CHECK(std::isfinite(gmm_s(t, 0.7)));
  }
}

TEST_CASE("gmm gradient matches finite differences of the objective") {
  for (double s2 : {1.0, 0.5}) {
    const GmmModel model(Vector{{3.0, 0.0, 0.0, 1.0, 0.0}}, s2, 0.3);
    Rng rng(6);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto z = model.draw(rng);
      const Vector theta = random_vector(5, rng, 2.0);
      worst = std::max(worst, finite_diff_check([&](const Vector& t) { return model.objective(t, z); },
                                                [&](const Vector& t) { return model.gradient(t, z); }, theta, 1e-5));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("gmm population Hessian") {
  Rng rng(7);
  const auto far = GmmModel::with_signal(3, 10.0);
  const Matrix a_far = gmm_population_hessian(far, far.theta_opt(), 20'000, rng);
  CHECK((a_far - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-6);

  const GmmModel model(Vector{{2.0, 1.0, 0.0}}, 1.0);
  Matrix se;
  const Matrix at_zero = gmm_population_hessian(model, Vector::Zero(3), 1'000'000, rng, &se);
  const Matrix exact = -model.theta_opt() * model.theta_opt().transpose();
  CHECK(((at_zero - exact).array().abs() <= 5.0 * se.array() + 1e-12).all());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(at_zero);
  CHECK(eig.eigenvalues().minCoeff() < -1.0);
  CHECK(at_zero.isApprox(at_zero.transpose(), 0.0));

  Rng r1(100), r2(200);
  Matrix se1, se2;
  const auto gm = GmmModel::with_signal(5, 3.0);
  const Matrix h1 = gmm_population_hessian(gm, gm.theta_opt(), 1'000'000, r1, &se1);
  const Matrix h2 = gmm_population_hessian(gm, gm.theta_opt(), 1'000'000, r2, &se2);
  const Matrix pooled = (se1.array().square() + se2.array().square()).sqrt().matrix();
  CHECK(((h1 - h2).array().abs() <= 5.0 * pooled.array() + 1e-15).all());
}

TEST_CASE("gmm population gradient vanishes at the three stationary points") {
  const auto model = GmmModel::with_signal(3, 2.0);
  for (const Vector& point : {Vector(model.theta_opt()), Vector(-model.theta_opt()), Vector(Vector::Zero(3))}) {
    Rng rng(8);
    const int n = 1'000'000;
    Vector sum = Vector::Zero(3);
    Vector sum_sq = Vector::Zero(3);
    Vector g(3);
    for (int i = 0; i < n; ++i) {
      model.gradient(point, model.draw(rng), g);
      sum += g;
      sum_sq += g.cwiseProduct(g);
    }
    const Vector mean = sum / n;
    const Vector se = ((sum_sq / n - mean.cwiseProduct(mean)) / n).cwiseSqrt();
    CHECK((mean.array().abs() <= 5.0 * se.array() + 1e-12).all());
  }
}

TEST_CASE("gmm oracle covariance") {
  const auto model = GmmModel::with_signal(3, 2.5);
  Rng a(9), b(9);
  const auto o1 = gmm_oracle_covariance(model, 1, 100'000, a);
  const auto o5 = gmm_oracle_covariance(model, 5, 100'000, b);
  CHECK((o5.sandwich * 5.0 - o1.sandwich).cwiseAbs().maxCoeff() <= 1e-12 * o1.sandwich.cwiseAbs().maxCoeff());
  CHECK(o1.sandwich.isApprox(o1.sandwich.transpose(), 1e-14));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(o1.sandwich);
  CHECK(eig.eigenvalues().minCoeff() >= 0.0);
  CHECK(o1.hessian_stderr.rows() == 3);

  // xi adds s_xi^2 I to U exactly
  Rng c(9);
  const auto noisy = GmmModel::with_signal(3, 2.5, 1.0, 0.4);
  const auto on = gmm_oracle_covariance(noisy, 1, 100'000, c);
  CHECK((on.noise - o1.noise - 0.4 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("oracle covariance rejects an indefinite Hessian") {
  Matrix a = Matrix::Identity(2, 2);
  a(1, 1) = -0.5;
  try {
    make_oracle_covariance(a, Matrix::Identity(2, 2));
    FAIL("expected OracleUnavailable");
  } catch (const OracleUnavailable& e) {
    CHECK(e.min_eigenvalue() == doctest::Approx(-0.5));
  }
  Matrix h(2, 2);
  h << 2.0, 0.5, 0.5, 1.0;
  Matrix u(2, 2);
  u << 1.0, 0.2, 0.2, 3.0;
  const auto o = make_oracle_covariance(h, u);
  const Matrix want = h.inverse() * u * h.inverse();
  CHECK((o.sandwich - want).cwiseAbs().maxCoeff() < 1e-14);
}

// ---------------------------------------------------------------- logistic

TEST_CASE("toeplitz covariance") {
  CHECK(toeplitz_cov(4, 0.0).isIdentity(0.0));
  Matrix t(2, 2);
  t << 1.0, 0.5, 0.5, 1.0;
  CHECK(toeplitz_cov(2, 0.5) == t);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(toeplitz_cov(10, 0.5));
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  CHECK(toeplitz_cov(5, 0.5)(0, 4) == doctest::Approx(0.0625));
  CHECK_THROWS_AS(toeplitz_cov(3, 1.0), ContractViolation);
}

TEST_CASE("logistic data generator") {
  Rng rng(10);
  const Eigen::Index d = 4;
  const auto model = logistic_generate_data(d, 100'000, Vector::Zero(d), Matrix::Identity(d, d), rng);
  const Matrix cov = model.design().transpose() * model.design() / 100'000.0;
  CHECK((cov - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() < 0.025);
  const double plus = (model.labels().array() > 0).cast<double>().mean();
  CHECK(std::abs(plus - 0.5) < 5.0 * 0.5 / std::sqrt(100'000.0));
  CHECK(model.lambda() == 0.0);

  // calibration: P(y = 1 | x) in bins of theta_s^T x
  const Vector theta_s{{1.0, 1.0, 0.0, 0.0}};
  const auto cal = logistic_generate_data(d, 100'000, theta_s, toeplitz_cov(d, 0.5), rng);
  const Vector score = cal.design() * theta_s;
  for (double lo = -2.0; lo < 2.0; lo += 0.5) {
    double n = 0, pos = 0, p_sum = 0;
    for (Eigen::Index i = 0; i < score.size(); ++i) {
      if (score[i] < lo || score[i] >= lo + 0.5) continue;
      n += 1;
      pos += cal.labels()[i] > 0 ? 1 : 0;
      p_sum += 1.0 / (1.0 + std::exp(-score[i]));
    }
    REQUIRE(n > 1000);
    const double p = p_sum / n;
    CHECK(std::abs(pos / n - p) < 5.0 * std::sqrt(p * (1 - p) / n));
  }

  Matrix bad = Matrix::Identity(d, d);
  bad(0, 0) = -1;
  CHECK_THROWS_AS(logistic_generate_data(d, 10, theta_s, bad, rng), ContractViolation);
  CHECK_THROWS_AS(logistic_generate_data(d, 10, Vector::Zero(3), Matrix::Identity(d, d), rng), DimensionMismatch);
}

TEST_CASE("logistic model validation") {
  RowMatrix x = RowMatrix::Ones(2, 2);
  CHECK_THROWS_AS(LogisticModel(x, Vector{{1.0, 0.0}}), ContractViolation);
  CHECK_THROWS_AS(LogisticModel(x, Vector{{1.0}}), DimensionMismatch);
  CHECK_THROWS_AS(LogisticModel(x, Vector{{1.0, -1.0}}, -0.1), ContractViolation);
  const LogisticModel ok(x, Vector{{1.0, -1.0}});
  CHECK_THROWS_AS(ok.gradient(Vector::Zero(2), 2), ContractViolation);
}

TEST_CASE("logistic single gradient closed forms") {
  const auto model = small_logistic(0.0);
  for (std::size_t i : {0u, 7u, 199u}) {
    const Vector want = -model.labels()[i] * model.design().row(i).transpose() / 2.0;
    CHECK((logistic_single_gradient(model, Vector::Zero(4), i) - want).norm() < 1e-15);
  }
  const auto pen = small_logistic(0.1);
  const Vector e1 = Vector::Unit(4, 0);
  const Vector diff = logistic_single_gradient(pen, e1, 3) - logistic_single_gradient(model, e1, 3);
  CHECK(diff[0] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(diff.tail(3).isZero(0.0));
}

TEST_CASE("logistic gradients and Hessian pass finite differences") {
  for (double lambda : {0.0, 0.1}) {
    const auto model = small_logistic(lambda, 11);
    Rng rng(12);
    double single = 0.0, full = 0.0, hess = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Vector theta = random_vector(4, rng, 1.5);
      const std::size_t i = model.draw(rng);
      single = std::max(single, finite_diff_check([&](const Vector& t) { return model.objective(t, i); },
                                                  [&](const Vector& t) { return model.gradient(t, i); }, theta, 1e-5));
      full = std::max(full, finite_diff_check([&](const Vector& t) { return model.full_objective(t); },
                                              [&](const Vector& t) { return model.full_gradient(t); }, theta, 1e-5));
      hess = std::max(hess, finite_diff_jacobian_check([&](const Vector& t) { return model.full_gradient(t); },
                                                       [&](const Vector& t) { return model.hessian(t); }, theta, 1e-5));
    }
    CHECK(single <= 1e-6);
    CHECK(full <= 1e-6);
    CHECK(hess <= 1e-5);
  }
}

TEST_CASE("logistic full gradient and Hessian structure") {
  const auto model = small_logistic(0.0, 13);
  Rng rng(14);
  const Vector theta = random_vector(4, rng);
  Vector mean = Vector::Zero(4);
  for (std::size_t i = 0; i < model.rows(); ++i) mean += logistic_single_gradient(model, theta, i);
  mean /= static_cast<double>(model.rows());
  CHECK((logistic_full_gradient(model, theta) - mean).norm() < 1e-14);
  const Matrix h = logistic_hessian(model, theta);
  CHECK(h.isApprox(h.transpose(), 0.0));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  CHECK(eig.eigenvalues().minCoeff() >= 0.0);
}

TEST_CASE("logistic optimum by gradient descent") {
  const auto model = small_logistic(0.1, 15, 300);
  std::vector<double> objective_path;
  GradientDescentOptions opts;
  opts.observer = [&](const Vector& t) { objective_path.push_back(model.full_objective(t)); };
  const Vector opt = logistic_find_optimum(model, Vector{{1.0, 1.0, 0.0, 0.0}}, opts);
  CHECK(model.full_gradient(opt).norm() <= 1e-10);
  for (std::size_t k = 1; k < objective_path.size(); ++k) REQUIRE(objective_path[k] <= objective_path[k - 1] + 1e-12);
  const Vector again = logistic_find_optimum(model, opt);
  CHECK((again - opt).norm() < 1e-9);

  GradientDescentOptions few;
  few.max_iter = 2;
  try {
    logistic_find_optimum(model, Vector::Zero(4), few);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.gradient_norm() > 1e-10);
  }
  GradientDescentOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(logistic_find_optimum(model, Vector::Zero(4), bad), ContractViolation);
}

TEST_CASE("logistic optimum matches a scalar root-finding oracle in one dimension") {
  RowMatrix x(6, 1);
  x << 1.0, -0.5, 2.0, 0.3, -1.2, 0.8;
  const Vector y{{1.0, 1.0, -1.0, 1.0, -1.0, -1.0}};
  const LogisticModel model(x, y);
  auto score = [&](double t) {
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += y[i] * x(i, 0) / (1.0 + std::exp(y[i] * x(i, 0) * t));
    return s;
  };
  double lo = -20.0, hi = 20.0;  // score is decreasing in t
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (score(mid) > 0 ? lo : hi) = mid;
  }
  const Vector opt = logistic_find_optimum(model, Vector::Zero(1));
  CHECK(opt[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
}

TEST_CASE("logistic oracle covariance") {
  const auto model = small_logistic(0.05, 16, 400);
  const Vector opt = logistic_find_optimum(model, Vector{{1.0, 1.0, 0.0, 0.0}});
  const auto o1 = logistic_oracle_covariance(model, opt, 1);
  const auto o5 = logistic_oracle_covariance(model, opt, 5);
  CHECK((5.0 * o5.sandwich - o1.sandwich).cwiseAbs().maxCoeff() <= 1e-14 * o1.sandwich.cwiseAbs().maxCoeff());
  CHECK(o1.sandwich.isApprox(o1.sandwich.transpose(), 1e-13));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(o1.sandwich);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);

  Matrix u = Matrix::Zero(4, 4);
  for (std::size_t i = 0; i < model.rows(); ++i) {
    const Vector g = model.gradient(opt, i);
    u += g * g.transpose();
  }
  u /= static_cast<double>(model.rows());
  CHECK((o1.noise - u).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(o1.hessian_stderr.size() == 0);
  CHECK_THROWS_AS(logistic_oracle_covariance(model, opt + Vector::Constant(4, 0.1), 1), ContractViolation);
}

// ---------------------------------------------------------------- quadratic and finite differences

TEST_CASE("quadratic model") {
  Matrix h(2, 2);
  h << 2.0, 0.3, 0.3, 1.0;
  Matrix s(2, 2);
  s << 1.0, -0.2, -0.2, 0.5;
  const QuadraticModel model(h, Vector{{1.0, -1.0}}, s);
  const auto o = model.oracle(4);
  CHECK((o.sandwich - h.inverse() * s * h.inverse() / 4.0).cwiseAbs().maxCoeff() < 1e-14);
  Rng rng(17);
  const Vector theta = random_vector(2, rng);
  const auto eps = model.draw(rng);
  CHECK(finite_diff_check([&](const Vector& t) { return model.objective(t, eps); },
                          [&](const Vector& t) {
                            Vector g(2);
                            model.gradient(t, eps, g);
                            return g;
                          },
                          theta, 1e-5) < 1e-8);
  const auto quiet = QuadraticModel::noiseless(Vector::Ones(3));
  CHECK(quiet.draw(rng).isZero(0.0));
  CHECK_THROWS_AS(QuadraticModel(-h, Vector::Zero(2), s), ContractViolation);
}

TEST_CASE("finite difference checker") {
  const Vector c{{1.0, -2.0, 0.5}};
  CHECK(finite_diff_check([&](const Vector& t) { return c.dot(t) + 3.0; }, [&](const Vector&) { return c; },
                          Vector{{0.1, 0.2, 0.3}}, 1e-5) <= 1e-10);
  CHECK(finite_diff_check([](const Vector& t) { return 0.5 * t.squaredNorm(); }, [](const Vector& t) { return t; },
                          Vector{{1.0, 2.0}}, 1e-5) <= 1e-9);
  CHECK(finite_diff_check([](const Vector& t) { return 0.5 * t.squaredNorm(); }, [](const Vector& t) { return 2.0 * t; },
                          Vector{{1.0, 2.0}}, 1e-5) > 0.4);
  CHECK_THROWS_AS(finite_diff_check([](const Vector&) { return 0.0; }, [](const Vector& t) { return t; },
                                    Vector::Ones(2), 0.0),
                  ContractViolation);
}

// ---------------------------------------------------------------- dataset snapshots

TEST_CASE("dataset snapshot round trip is bit exact") {
  DesignCovariance toe;
  toe.kind = DesignCovariance::Kind::Toeplitz;
  toe.rho = 0.5;
  const auto ds = generate_dataset(5, 50, Vector{{1.0, 1.0, 0.0, 0.0, 0.0}}, toe, 0.075, 1234);
  const auto back = dataset_from_json(nlohmann::json::parse(dataset_to_json(ds).dump()));
  CHECK(back.model.design() == ds.model.design());
  CHECK(back.model.labels() == ds.model.labels());
  CHECK(back.model.lambda() == 0.075);
  CHECK(back.theta_s == ds.theta_s);
  CHECK(back.sigma_x.kind == DesignCovariance::Kind::Toeplitz);
  CHECK(back.sigma_x.rho == 0.5);
  CHECK(back.seed == 1234);

  const auto again = generate_dataset(5, 50, ds.theta_s, toe, 0.075, 1234);
  CHECK(again.model.design() == ds.model.design());

  const auto path = std::filesystem::temp_directory_path() / "sgdci_dataset_roundtrip.json";
  save_dataset(ds, path);
  const auto loaded = load_dataset(path);
  CHECK(loaded.model.design() == ds.model.design());
  std::filesystem::remove(path);

  DesignCovariance ex;
  ex.kind = DesignCovariance::Kind::Explicit;
  ex.explicit_matrix = toeplitz_cov(3, 0.2);
  const auto de = generate_dataset(3, 10, Vector::Ones(3), ex, 0.0, 5);
  const auto de_back = dataset_from_json(dataset_to_json(de));
  CHECK(de_back.sigma_x.explicit_matrix == ex.explicit_matrix);
}

TEST_CASE("dataset snapshot errors") {
  auto doc = dataset_to_json(generate_dataset(2, 5, Vector::Ones(2), DesignCovariance{}, 0.0, 1));
  auto wrong_format = doc;
  wrong_format["format"] = "something-else";
  CHECK_THROWS_AS(dataset_from_json(wrong_format), ConfigError);
  auto wrong_size = doc;
  wrong_size["y"] = std::vector<double>{1.0};
  CHECK_THROWS_AS(dataset_from_json(wrong_size), ConfigError);
  CHECK_THROWS_AS(load_dataset("/nonexistent/dir/ds.json"), IoError);
}
