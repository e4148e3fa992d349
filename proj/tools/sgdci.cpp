#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sgdci/errors.hpp"
#include "sgdci/harness/config.hpp"
#include "sgdci/harness/experiment.hpp"
#include "sgdci/harness/report.hpp"

namespace {

using namespace sgdci;
using namespace sgdci::harness;

constexpr const char* kSeedEnv = "SGDCI_SEED";

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin + ": not an unsigned 64-bit seed: '" + text + "'");
  }
}

struct RunArgs {
  std::string config;
  std::optional<std::string> seed;
  std::string out = "sgdci-out";
  std::optional<std::uint64_t> mc;
  std::optional<std::uint64_t> n;
  std::optional<std::size_t> b;
  std::optional<std::string> model;
  std::optional<std::string> weights;
  std::optional<std::string> cov_mode;
  std::optional<unsigned> threads;
  bool quiet = false;
};

ExperimentConfig build_config(const RunArgs& args) {
  ExperimentConfig cfg;
  if (!args.config.empty()) {
    cfg = load_config(args.config);
    if (args.model) {
      const bool is_gmm = std::holds_alternative<GmmSpec>(cfg.model);
      if ((*args.model == "gmm") != is_gmm) throw ConfigError("--model disagrees with the model in " + args.config);
    }
  } else if (args.model && *args.model == "logistic") {
    cfg = logistic_defaults();
  } else {
    cfg = gmm_defaults();
  }

  if (const char* env = std::getenv(kSeedEnv); env && *env) cfg.seed = parse_seed(env, kSeedEnv);
  if (args.seed) cfg.seed = parse_seed(*args.seed, "--seed");
  if (args.mc) cfg.mc = *args.mc;
  if (args.n) cfg.iterations = *args.n;
  if (args.b) cfg.replicas = *args.b;
  if (args.weights) cfg.weights = parse_weights(*args.weights);
  if (args.cov_mode) cfg.cov_mode = parse_cov_mode(*args.cov_mode);
  if (args.threads) cfg.threads = *args.threads;
  cfg.validate();
  return cfg;
}

int run(const RunArgs& args) {
  const ExperimentConfig cfg = build_config(args);
  const ExperimentOutcome outcome = run_experiment(cfg);
  write_outputs(outcome, args.out);
  if (!args.quiet) {
    const auto& rep = outcome.report;
    std::cout << "replications " << rep.replications << ", seed " << cfg.seed << ", " << rep.wall_seconds << " s\n";
    for (const auto& s : rep.methods) {
      std::cout << "  " << to_string(s.method) << ": " << table_cell(s) << "  fixed-sign " << s.coverage_fixed;
      if (s.no_accept > 0) std::cout << "  no-accept " << s.no_accept_rate;
      std::cout << '\n';
    }
    std::cout << "wrote " << (std::filesystem::path(args.out) / "report.json").string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online SGD confidence intervals: Monte-Carlo coverage experiments"};
  app.require_subcommand(1);

  RunArgs args;
  auto* run_cmd = app.add_subcommand("run", "run a coverage experiment");
  run_cmd->add_option("--config", args.config, "JSON experiment config")->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", args.seed, std::string("master seed (overrides ") + kSeedEnv + " and the config)");
  run_cmd->add_option("--out", args.out, "output directory")->capture_default_str();
  run_cmd->add_option("--mc", args.mc, "Monte-Carlo replications");
  run_cmd->add_option("--n", args.n, "SGD iterations N");
  run_cmd->add_option("--b", args.b, "bootstrap replicas B");
  run_cmd->add_option("--model", args.model, "gmm or logistic")->check(CLI::IsMember({"gmm", "logistic"}));
  run_cmd->add_option("--weights", args.weights, "uniform or exp")->check(CLI::IsMember({"uniform", "exp"}));
  run_cmd->add_option("--cov-mode", args.cov_mode, "exact or recursion")->check(CLI::IsMember({"exact", "recursion"}));
  run_cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
  run_cmd->add_flag("--quiet", args.quiet, "no summary on stdout");

  std::string defaults_model = "gmm";
  auto* defaults_cmd = app.add_subcommand("defaults", "print the default config for a model as JSON");
  defaults_cmd->add_option("--model", defaults_model, "gmm or logistic")->check(CLI::IsMember({"gmm", "logistic"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*defaults_cmd) {
      std::cout << config_to_json(defaults_model == "gmm" ? gmm_defaults() : logistic_defaults()).dump(2) << '\n';
      return 0;
    }
    return run(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
