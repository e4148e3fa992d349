#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "sgdci/bootstrap.hpp"
#include "sgdci/harness/config.hpp"
#include "sgdci/inference.hpp"
#include "sgdci/models/dataset.hpp"
#include "sgdci/models/gmm.hpp"
#include "sgdci/models/oracle_covariance.hpp"

namespace sgdci::harness {

struct MethodOutcome {
  std::optional<ConfidenceInterval> ci;  // empty when no replica was accepted
  bool covered = false;                  // against the resolved target
  bool covered_fixed = false;            // against the first candidate
};

struct ReplicationResult {
  std::uint64_t index = 0;
  double center = 0.0;        // a^T theta_bar_N, shared by all three intervals
  double target = 0.0;        // a^T (candidate nearest theta_bar_N)
  double target_fixed = 0.0;  // a^T (first candidate)
  std::size_t accepted = 0;
  Vector theta_bar;
  std::array<MethodOutcome, 3> methods;

  MethodOutcome& operator[](CiMethod m) { return methods[static_cast<std::size_t>(m)]; }
  const MethodOutcome& operator[](CiMethod m) const { return methods[static_cast<std::size_t>(m)]; }
};

/// Everything a replication needs besides its seed: the model, its oracle
/// sandwich, the local minima coverage is scored against, and the init box.
template <ModelOracle M>
struct ExperimentContext {
  M model;
  models::OracleCovariance oracle;
  std::vector<Vector> candidates;  // first entry is the "fixed sign" target
  Vector init_center;
};

/// Nearest candidate to theta_bar in Euclidean norm; ties go to the earlier one.
Vector resolve_target(const Vector& theta_bar, std::span<const Vector> candidates);
std::size_t resolve_target_index(const Vector& theta_bar, std::span<const Vector> candidates);

/// Seeds for replication k. The init draw, the data stream and the replica
/// weights live in separate substreams, so e.g. changing B leaves the data
/// stream untouched.
struct ReplicationSeeds {
  std::uint64_t replication;
  std::uint64_t init;
  std::uint64_t data;
  std::uint64_t weights;
};
ReplicationSeeds replication_seeds(std::uint64_t master_seed, std::uint64_t k);

Vector draw_initial_point(const Vector& center, double side, Rng& rng);

/// Scores the three intervals for one finished run.
ReplicationResult score_replication(std::uint64_t k, const ExperimentConfig& cfg, const SgdState& main,
                                    const ReplicaEnsemble& ensemble, const models::OracleCovariance& oracle,
                                    std::span<const Vector> candidates);

/// One Monte-Carlo replication: random init, N coupled main/replica steps,
/// then the Cov, Bootstrap and Oracle intervals.
template <ModelOracle M>
ReplicationResult run_replication(const ExperimentContext<M>& ctx, const ExperimentConfig& cfg, std::uint64_t k) {
  const ReplicationSeeds seeds = replication_seeds(cfg.seed, k);
  Rng init_rng(seeds.init);
  Rng data_rng(seeds.data);

  SgdState main = SgdState::start(draw_initial_point(ctx.init_center, cfg.init.side, init_rng));
  ReplicaEnsemble ensemble(main, cfg.replicas, cfg.weights, seeds.weights, cfg.cov_mode);

  Vector grad;
  Vector scratch;
  SgdState before = main;
  for (std::uint64_t n = 0; n < cfg.iterations; ++n) {
    const auto batch = draw_batch(ctx.model, cfg.batch_size, data_rng);
    const double gamma = step_size(cfg.schedule, n + 1);
    before = main;
    minibatch_gradient(ctx.model, main.theta, batch, grad, scratch);
    sgd_step(main, grad, gamma);
    ensemble.step(before, main, ctx.model, batch, gamma);
  }
  return score_replication(k, cfg, main, ensemble, ctx.oracle, ctx.candidates);
}

/// Runs fn(k) for k in [0, count) on `threads` workers and returns the
/// results in index order. Output does not depend on the worker count.
template <typename Fn>
std::vector<ReplicationResult> run_indexed(std::uint64_t count, unsigned threads, Fn&& fn) {
  std::vector<ReplicationResult> results(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        results[k] = fn(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

template <ModelOracle M>
std::vector<ReplicationResult> run_replications(const ExperimentContext<M>& ctx, const ExperimentConfig& cfg) {
  return run_indexed(cfg.mc, cfg.threads, [&](std::uint64_t k) { return run_replication(ctx, cfg, k); });
}

struct MethodSummary {
  CiMethod method = CiMethod::Cov;
  std::uint64_t count = 0;  // replications with an interval
  std::uint64_t covered = 0;
  std::uint64_t covered_fixed = 0;
  double coverage = 0.0;        // covered / count
  double coverage_fixed = 0.0;  // covered_fixed / count
  double mean_width = 0.0;
  std::uint64_t no_accept = 0;  // replications without an interval (c = 0)
  double no_accept_rate = 0.0;
};

struct CoverageReport {
  std::array<MethodSummary, 3> methods;
  std::uint64_t replications = 0;
  double mean_accepted = 0.0;
  std::size_t min_accepted = 0;
  std::size_t max_accepted = 0;
  double wall_seconds = 0.0;

  const MethodSummary& operator[](CiMethod m) const { return methods[static_cast<std::size_t>(m)]; }
};

/// Aggregates per-method coverage and widths. Sums are taken over sorted
/// values, so the report is identical under any reordering of `results`.
CoverageReport summarize(std::span<const ReplicationResult> results);

struct ExperimentOutcome {
  ExperimentConfig config;
  CoverageReport report;
  std::vector<ReplicationResult> results;
  models::OracleCovariance oracle;
  std::vector<Vector> candidates;
  std::optional<models::LogisticDataset> dataset;
};

ExperimentContext<models::GmmModel> make_gmm_context(const ExperimentConfig& cfg);

struct LogisticSetup {
  ExperimentContext<models::LogisticModel> context;
  models::LogisticDataset dataset;
};
LogisticSetup make_logistic_context(const ExperimentConfig& cfg);

/// Builds the model named by the config and runs all MC replications.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

}  // namespace sgdci::harness
