#include "sgdci/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string>

#include "sgdci/errors.hpp"

namespace sgdci::harness {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; });
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

Vector vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> vector_to(const Vector& v) { return {v.data(), v.data() + v.size()}; }

template <typename T>
void read_if(const json& obj, const char* key, T& field) {
  if (auto it = obj.find(key); it != obj.end()) field = it->get<T>();
}

models::DesignCovariance parse_design(const json& j) {
  reject_unknown(j, {"kind", "rho", "matrix"}, "model.sigma_x");
  models::DesignCovariance out;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "identity") {
    out.kind = models::DesignCovariance::Kind::Identity;
  } else if (kind == "toeplitz") {
    out.kind = models::DesignCovariance::Kind::Toeplitz;
    out.rho = j.value("rho", 0.5);
  } else if (kind == "explicit") {
    out.kind = models::DesignCovariance::Kind::Explicit;
    const auto rows = j.at("matrix").get<std::vector<std::vector<double>>>();
    const auto d = static_cast<Eigen::Index>(rows.size());
    out.explicit_matrix.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (static_cast<Eigen::Index>(rows[i].size()) != d) throw ConfigError("model.sigma_x.matrix must be square");
      for (Eigen::Index k = 0; k < d; ++k) out.explicit_matrix(i, k) = rows[i][k];
    }
  } else {
    throw ConfigError("model.sigma_x.kind must be identity, toeplitz or explicit");
  }
  return out;
}

json design_to_json(const models::DesignCovariance& s) {
  switch (s.kind) {
    case models::DesignCovariance::Kind::Identity:
      return {{"kind", "identity"}};
    case models::DesignCovariance::Kind::Toeplitz:
      return {{"kind", "toeplitz"}, {"rho", s.rho}};
    case models::DesignCovariance::Kind::Explicit: {
      std::vector<std::vector<double>> rows;
      for (Eigen::Index i = 0; i < s.explicit_matrix.rows(); ++i)
        rows.push_back(vector_to(s.explicit_matrix.row(i).transpose()));
      return {{"kind", "explicit"}, {"matrix", rows}};
    }
  }
  return {};
}

void apply_model(const json& j, ExperimentConfig& cfg) {
  if (auto* g = std::get_if<GmmSpec>(&cfg.model)) {
    reject_unknown(j, {"kind", "d", "s", "sigma2", "sigma_xi2", "oracle_mc"}, "model");
    read_if(j, "d", g->d);
    read_if(j, "s", g->s);
    read_if(j, "sigma2", g->sigma2);
    read_if(j, "sigma_xi2", g->sigma_xi2);
    read_if(j, "oracle_mc", g->oracle_mc);
    return;
  }
  auto& l = std::get<LogisticSpec>(cfg.model);
  reject_unknown(j, {"kind", "d", "M", "theta_s", "sigma_x", "lambda", "dataset", "dataset_seed", "gd_step", "gd_tol"},
                 "model");
  read_if(j, "d", l.d);
  read_if(j, "M", l.rows);
  if (j.contains("theta_s")) l.theta_s = vector_from(j.at("theta_s"));
  if (j.contains("sigma_x")) l.sigma_x = parse_design(j.at("sigma_x"));
  read_if(j, "lambda", l.lambda);
  if (j.contains("dataset")) l.dataset = j.at("dataset").get<std::string>();
  if (j.contains("dataset_seed")) l.dataset_seed = j.at("dataset_seed").get<std::uint64_t>();
  read_if(j, "gd_step", l.gd_step);
  read_if(j, "gd_tol", l.gd_tol);
}

}  // namespace

Vector LogisticSpec::resolved_theta_s() const {
  if (theta_s.size() > 0) return theta_s;
  Vector out = Vector::Zero(d);
  for (Eigen::Index j = 0; j < std::min<Eigen::Index>(2, d); ++j) out[j] = 1.0;
  return out;
}

Eigen::Index ExperimentConfig::dim() const {
  return std::visit([](const auto& spec) { return spec.d; }, model);
}

Vector ExperimentConfig::target_functional() const {
  if (functional) return *functional;
  Vector a = Vector::Zero(dim());
  a[0] = 1.0;
  return a;
}

void ExperimentConfig::validate() const {
  const auto d = dim();
  if (d < 1) throw ConfigError("config: dimension must be >= 1");
  if (iterations < 1) throw ConfigError("config: N must be >= 1");
  if (replicas < 1) throw ConfigError("config: B must be >= 1");
  if (batch_size < 1) throw ConfigError("config: m must be >= 1");
  if (mc < 1) throw ConfigError("config: MC must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("config: q must lie in (0, 1)");
  if (!(r0 > 0.0)) throw ConfigError("config: r0 must be > 0");
  if (!(init.side > 0.0)) throw ConfigError("config: init side must be > 0");
  if (!(schedule.scale > 0.0)) throw ConfigError("config: schedule C must be > 0");
  if (functional && functional->size() != d) throw ConfigError("config: a must have length d");
  if (init.center == InitSpec::Center::Explicit && init.explicit_center.size() != d)
    throw ConfigError("config: init center must have length d");
  if (const auto* g = std::get_if<GmmSpec>(&model)) {
    if (!(g->sigma2 > 0.0)) throw ConfigError("config: sigma2 must be > 0");
    if (!(g->sigma_xi2 >= 0.0)) throw ConfigError("config: sigma_xi2 must be >= 0");
    if (g->oracle_mc < 1) throw ConfigError("config: oracle_mc must be >= 1");
  } else {
    const auto& l = std::get<LogisticSpec>(model);
    if (l.rows < 1) throw ConfigError("config: M must be >= 1");
    if (!(l.lambda >= 0.0)) throw ConfigError("config: lambda must be >= 0");
    if (l.theta_s.size() != 0 && l.theta_s.size() != d) throw ConfigError("config: theta_s must have length d");
    if (!(l.gd_step > 0.0) || !(l.gd_tol > 0.0)) throw ConfigError("config: gd_step and gd_tol must be > 0");
  }
}

ExperimentConfig gmm_defaults() { return ExperimentConfig{}; }

ExperimentConfig logistic_defaults() {
  ExperimentConfig cfg;
  cfg.model = LogisticSpec{};
  cfg.iterations = 8000;
  cfg.schedule = StepSchedule{1.0, 47.0 / 92.0};
  cfg.mc = 3000;
  cfg.init = InitSpec{InitSpec::Center::Optimum, {}, 4.0};
  return cfg;
}

MultiplierDistribution parse_weights(const std::string& name) {
  if (name == "uniform") return MultiplierDistribution::uniform();
  if (name == "exp" || name == "exponential") return MultiplierDistribution::exponential();
  if (name == "one" || name == "constant") return MultiplierDistribution::constant(1.0);
  throw ConfigError("weights must be 'uniform' or 'exp' (got '" + name + "')");
}

CovarianceMode parse_cov_mode(const std::string& name) {
  if (name == "exact") return CovarianceMode::Exact;
  if (name == "recursion") return CovarianceMode::Recursion;
  throw ConfigError("cov mode must be 'exact' or 'recursion' (got '" + name + "')");
}

std::string to_string(const MultiplierDistribution& dist) {
  switch (dist.kind) {
    case MultiplierDistribution::Kind::UniformSym:
      return "uniform";
    case MultiplierDistribution::Kind::ExponentialUnit:
      return "exp";
    case MultiplierDistribution::Kind::Constant:
      return "constant";
  }
  return "?";
}

std::string to_string(CovarianceMode mode) { return mode == CovarianceMode::Exact ? "exact" : "recursion"; }

ExperimentConfig config_from_json(const json& doc) {
  try {
    reject_unknown(doc, {"model", "N", "B", "m", "schedule", "mc", "q", "a", "weights", "r0", "init", "seed", "cov_mode",
                         "threads"},
                   "config");
    std::string kind = "gmm";
    if (doc.contains("model")) kind = doc.at("model").value("kind", "gmm");
    ExperimentConfig cfg;
    if (kind == "gmm") {
      cfg = gmm_defaults();
    } else if (kind == "logistic") {
      cfg = logistic_defaults();
    } else {
      throw ConfigError("model.kind must be 'gmm' or 'logistic'");
    }
    if (doc.contains("model")) apply_model(doc.at("model"), cfg);

    read_if(doc, "N", cfg.iterations);
    read_if(doc, "B", cfg.replicas);
    read_if(doc, "m", cfg.batch_size);
    read_if(doc, "mc", cfg.mc);
    read_if(doc, "q", cfg.q);
    read_if(doc, "r0", cfg.r0);
    read_if(doc, "seed", cfg.seed);
    read_if(doc, "threads", cfg.threads);
    if (doc.contains("a")) cfg.functional = vector_from(doc.at("a"));
    if (doc.contains("weights")) {
      const auto& w = doc.at("weights");
      if (w.is_object()) {
        reject_unknown(w, {"constant"}, "weights");
        cfg.weights = MultiplierDistribution::constant(w.at("constant").get<double>());
      } else {
        cfg.weights = parse_weights(w.get<std::string>());
      }
    }
    if (doc.contains("cov_mode")) cfg.cov_mode = parse_cov_mode(doc.at("cov_mode").get<std::string>());
    if (doc.contains("schedule")) {
      const auto& s = doc.at("schedule");
      reject_unknown(s, {"C", "alpha", "check"}, "schedule");
      double scale = cfg.schedule.scale;
      double alpha = cfg.schedule.alpha;
      read_if(s, "C", scale);
      read_if(s, "alpha", alpha);
      const auto check = s.value("check", std::string("strict")) == "warn" ? StepSchedule::RangeCheck::Warn
                                                                           : StepSchedule::RangeCheck::Strict;
      try {
        cfg.schedule = StepSchedule::make(scale, alpha, check);
      } catch (const ContractViolation& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
      }
    }
    if (doc.contains("init")) {
      const auto& in = doc.at("init");
      reject_unknown(in, {"center", "side"}, "init");
      read_if(in, "side", cfg.init.side);
      if (in.contains("center")) {
        const auto& c = in.at("center");
        if (c.is_string()) {
          const auto name = c.get<std::string>();
          if (name == "zero") {
            cfg.init.center = InitSpec::Center::Zero;
          } else if (name == "opt" || name == "optimum") {
            cfg.init.center = InitSpec::Center::Optimum;
          } else {
            throw ConfigError("init.center must be 'zero', 'opt' or a vector");
          }
        } else {
          cfg.init.center = InitSpec::Center::Explicit;
          cfg.init.explicit_center = vector_from(c);
        }
      }
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json config_to_json(const ExperimentConfig& cfg) {
  json model;
  if (const auto* g = std::get_if<GmmSpec>(&cfg.model)) {
    model = {{"kind", "gmm"}, {"d", g->d}, {"s", g->s}, {"sigma2", g->sigma2}, {"sigma_xi2", g->sigma_xi2},
             {"oracle_mc", g->oracle_mc}};
  } else {
    const auto& l = std::get<LogisticSpec>(cfg.model);
    model = {{"kind", "logistic"},
             {"d", l.d},
             {"M", l.rows},
             {"theta_s", vector_to(l.resolved_theta_s())},
             {"sigma_x", design_to_json(l.sigma_x)},
             {"lambda", l.lambda},
             {"gd_step", l.gd_step},
             {"gd_tol", l.gd_tol}};
    if (l.dataset) model["dataset"] = l.dataset->string();
    if (l.dataset_seed) model["dataset_seed"] = *l.dataset_seed;
  }
  json weights = to_string(cfg.weights);
  if (cfg.weights.kind == MultiplierDistribution::Kind::Constant) weights = {{"constant", cfg.weights.value}};
  json center;
  switch (cfg.init.center) {
    case InitSpec::Center::Zero:
      center = "zero";
      break;
    case InitSpec::Center::Optimum:
      center = "opt";
      break;
    case InitSpec::Center::Explicit:
      center = vector_to(cfg.init.explicit_center);
      break;
  }
  return {{"model", model},
          {"N", cfg.iterations},
          {"B", cfg.replicas},
          {"m", cfg.batch_size},
          {"schedule", {{"C", cfg.schedule.scale}, {"alpha", cfg.schedule.alpha}}},
          {"mc", cfg.mc},
          {"q", cfg.q},
          {"a", vector_to(cfg.target_functional())},
          {"weights", weights},
          {"r0", cfg.r0},
          {"init", {{"center", center}, {"side", cfg.init.side}}},
          {"seed", cfg.seed},
          {"cov_mode", to_string(cfg.cov_mode)},
          {"threads", cfg.threads}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace sgdci::harness
