#include "sgdci/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "sgdci/errors.hpp"

namespace sgdci::harness {

namespace {

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

void score(MethodOutcome& out, const ConfidenceInterval& ci, double target, double target_fixed) {
  out.ci = ci;
  out.covered = ci.contains(target);
  out.covered_fixed = ci.contains(target_fixed);
}

Vector init_center_for(const ExperimentConfig& cfg, const Vector& optimum) {
  switch (cfg.init.center) {
    case InitSpec::Center::Zero:
      return Vector::Zero(cfg.dim());
    case InitSpec::Center::Optimum:
      return optimum;
    case InitSpec::Center::Explicit:
      return cfg.init.explicit_center;
  }
  return Vector::Zero(cfg.dim());
}

}  // namespace

std::size_t resolve_target_index(const Vector& theta_bar, std::span<const Vector> candidates) {
  if (candidates.empty()) throw ContractViolation("resolve_target: no candidate minima");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].size() != theta_bar.size()) throw DimensionMismatch("resolve_target: candidate has wrong length");
    const double dist = (candidates[i] - theta_bar).squaredNorm();
    if (dist < best_dist) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

Vector resolve_target(const Vector& theta_bar, std::span<const Vector> candidates) {
  return candidates[resolve_target_index(theta_bar, candidates)];
}

ReplicationSeeds replication_seeds(std::uint64_t master_seed, std::uint64_t k) {
  const std::uint64_t rep = derive_seed(master_seed, Stream::Replication, k);
  return {rep, derive_seed(rep, Stream::Init), derive_seed(rep, Stream::Data), derive_seed(rep, Stream::Weights)};
}

Vector draw_initial_point(const Vector& center, double side, Rng& rng) {
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  Vector theta0(center.size());
  for (Eigen::Index i = 0; i < center.size(); ++i) theta0[i] = center[i] + side * unit(rng);
  return theta0;
}

ReplicationResult score_replication(std::uint64_t k, const ExperimentConfig& cfg, const SgdState& main,
                                    const ReplicaEnsemble& ensemble, const models::OracleCovariance& oracle,
                                    std::span<const Vector> candidates) {
  const Vector a = cfg.target_functional();
  ReplicationResult res;
  res.index = k;
  res.theta_bar = main.theta_bar;
  res.center = a.dot(main.theta_bar);
  res.target = a.dot(resolve_target(main.theta_bar, candidates));
  res.target_fixed = a.dot(candidates.front());

  const CovarianceAggregate agg = aggregate_covariance(ensemble, main, cfg.r0);
  res.accepted = agg.accepted;
  if (agg.accepted > 0) {
    ConfidenceInterval ci = cov_ci(a, main.theta_bar, agg.sigma, main.n, cfg.q);
    ci.accepted = agg.accepted;
    score(res[CiMethod::Cov], ci, res.target, res.target_fixed);

    const std::vector<double> proj = collect_projections(ensemble, main, a, cfg.r0);
    score(res[CiMethod::Bootstrap], bootstrap_ci(a, main.theta_bar, proj, main.n, cfg.q), res.target,
          res.target_fixed);
  }
  score(res[CiMethod::Oracle], oracle_ci(a, main.theta_bar, oracle.sandwich, main.n, cfg.q), res.target,
        res.target_fixed);
  return res;
}

CoverageReport summarize(std::span<const ReplicationResult> results) {
  CoverageReport report;
  report.replications = results.size();
  for (std::size_t mi = 0; mi < 3; ++mi) {
    const auto method = static_cast<CiMethod>(mi);
    MethodSummary& s = report.methods[mi];
    s.method = method;
    std::vector<double> widths;
    for (const auto& r : results) {
      const MethodOutcome& o = r[method];
      if (!o.ci) {
        ++s.no_accept;
        continue;
      }
      ++s.count;
      s.covered += o.covered ? 1 : 0;
      s.covered_fixed += o.covered_fixed ? 1 : 0;
      widths.push_back(o.ci->width());
    }
    if (s.count > 0) {
      const double n = static_cast<double>(s.count);
      s.coverage = static_cast<double>(s.covered) / n;
      s.coverage_fixed = static_cast<double>(s.covered_fixed) / n;
      s.mean_width = sorted_sum(std::move(widths)) / n;
    }
    if (!results.empty()) s.no_accept_rate = static_cast<double>(s.no_accept) / static_cast<double>(results.size());
  }
  if (!results.empty()) {
    std::uint64_t total = 0;
    report.min_accepted = std::numeric_limits<std::size_t>::max();
    for (const auto& r : results) {
      total += r.accepted;
      report.min_accepted = std::min(report.min_accepted, r.accepted);
      report.max_accepted = std::max(report.max_accepted, r.accepted);
    }
    report.mean_accepted = static_cast<double>(total) / static_cast<double>(results.size());
  }
  return report;
}

ExperimentContext<models::GmmModel> make_gmm_context(const ExperimentConfig& cfg) {
  const auto& spec = std::get<GmmSpec>(cfg.model);
  models::GmmModel model = models::GmmModel::with_signal(spec.d, spec.s, spec.sigma2, spec.sigma_xi2);
  Rng oracle_rng = make_rng(cfg.seed, Stream::Oracle);
  models::OracleCovariance oracle = models::gmm_oracle_covariance(model, cfg.batch_size, spec.oracle_mc, oracle_rng);
  std::vector<Vector> candidates{model.theta_opt(), -model.theta_opt()};
  Vector center = init_center_for(cfg, model.theta_opt());
  return {std::move(model), std::move(oracle), std::move(candidates), std::move(center)};
}

LogisticSetup make_logistic_context(const ExperimentConfig& cfg) {
  const auto& spec = std::get<LogisticSpec>(cfg.model);
  models::LogisticDataset dataset = [&] {
    if (spec.dataset) {
      models::LogisticDataset loaded = models::load_dataset(*spec.dataset);
      if (loaded.model.dim() != spec.d) throw ConfigError("dataset dimension does not match config d");
      loaded.model = loaded.model.with_lambda(spec.lambda);
      return loaded;
    }
    const std::uint64_t seed = spec.dataset_seed.value_or(derive_seed(cfg.seed, Stream::Dataset));
    return models::generate_dataset(spec.d, spec.rows, spec.resolved_theta_s(), spec.sigma_x, spec.lambda, seed);
  }();

  models::GradientDescentOptions gd;
  gd.step = spec.gd_step;
  gd.tol = spec.gd_tol;
  const Vector optimum = models::logistic_find_optimum(dataset.model, dataset.theta_s, gd);
  models::OracleCovariance oracle = models::logistic_oracle_covariance(dataset.model, optimum, cfg.batch_size);
  Vector center = init_center_for(cfg, optimum);
  ExperimentContext<models::LogisticModel> ctx{dataset.model, std::move(oracle), {optimum}, std::move(center)};
  return {std::move(ctx), std::move(dataset)};
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentOutcome out;
  out.config = cfg;
  if (std::holds_alternative<GmmSpec>(cfg.model)) {
    const auto ctx = make_gmm_context(cfg);
    out.results = run_replications(ctx, cfg);
    out.oracle = ctx.oracle;
    out.candidates = ctx.candidates;
  } else {
    auto setup = make_logistic_context(cfg);
    out.results = run_replications(setup.context, cfg);
    out.oracle = setup.context.oracle;
    out.candidates = setup.context.candidates;
    out.dataset = std::move(setup.dataset);
  }
  out.report = summarize(out.results);
  out.report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sgdci::harness
