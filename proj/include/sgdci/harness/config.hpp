#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <variant>

#include "json.hpp"
#include "sgdci/bootstrap.hpp"
#include "sgdci/models/logistic.hpp"
#include "sgdci/sgd_core.hpp"

namespace sgdci::harness {

struct GmmSpec {
  Eigen::Index d = 5;
  double s = 3.0;
  double sigma2 = 1.0;
  double sigma_xi2 = 0.0;
  std::uint64_t oracle_mc = 1'000'000;  // draws for the Monte-Carlo A and U
};

struct LogisticSpec {
  Eigen::Index d = 10;
  std::size_t rows = 1000;
  Vector theta_s;  // empty -> (1, 1, 0, ..., 0)
  models::DesignCovariance sigma_x;
  double lambda = 0.0;
  std::optional<std::filesystem::path> dataset;  // reload a snapshot instead of generating
  std::optional<std::uint64_t> dataset_seed;     // defaults to a child of the master seed
  double gd_step = 0.5;
  double gd_tol = 1e-10;

  Vector resolved_theta_s() const;
};

using ModelSpec = std::variant<GmmSpec, LogisticSpec>;

/// Uniform initializer on a hypercube of side `side` around `center`.
struct InitSpec {
  enum class Center { Zero, Optimum, Explicit };
  Center center = Center::Zero;
  Vector explicit_center;
  double side = 10.0;
};

struct ExperimentConfig {
  ModelSpec model = GmmSpec{};
  std::uint64_t iterations = 4000;  // N
  std::size_t replicas = 500;       // B
  std::size_t batch_size = 5;       // m
  StepSchedule schedule{0.5, 47.0 / 92.0};
  std::uint64_t mc = 6000;
  double q = 0.05;
  std::optional<Vector> functional;  // a; e_1 when absent
  MultiplierDistribution weights = MultiplierDistribution::uniform();
  double r0 = 1.0;
  InitSpec init;
  std::uint64_t seed = 20240101;
  CovarianceMode cov_mode = CovarianceMode::Exact;
  unsigned threads = 0;  // 0 -> hardware concurrency

  Eigen::Index dim() const;
  Vector target_functional() const;
  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// GMM defaults: d=5, s=3, m=5, gamma_n = n^{-47/92}/2,
/// init on [-5, 5]^d, N=4000, B=500, MC=6000.
ExperimentConfig gmm_defaults();

/// Logistic defaults: d=10, M=1000, theta_s=(1,1,0,...), m=5,
/// gamma_n = n^{-47/92}, init within side 4 of theta_opt, N=8000, B=500,
/// MC=3000.
ExperimentConfig logistic_defaults();

/// Fields absent from the document keep the defaults of the chosen model
/// kind. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

MultiplierDistribution parse_weights(const std::string& name);
CovarianceMode parse_cov_mode(const std::string& name);
std::string to_string(const MultiplierDistribution& dist);
std::string to_string(CovarianceMode mode);

}  // namespace sgdci::harness
