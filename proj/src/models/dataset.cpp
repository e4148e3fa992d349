#include "sgdci/models/dataset.hpp"

#include <fstream>
#include <vector>

#include "sgdci/errors.hpp"

namespace sgdci::models {

namespace {

constexpr const char* kFormat = "sgdci.logistic-dataset";
constexpr int kVersion = 1;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

std::vector<double> row_major(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

}  // namespace

LogisticDataset generate_dataset(Eigen::Index d, std::size_t m_rows, const Vector& theta_s,
                                 const DesignCovariance& sigma_x, double lambda, std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::Dataset);
  LogisticModel model = logistic_generate_data(d, m_rows, theta_s, sigma_x.matrix(d), rng).with_lambda(lambda);
  return {std::move(model), theta_s, sigma_x, seed};
}

nlohmann::json dataset_to_json(const LogisticDataset& ds) {
  const auto& x = ds.model.design();
  nlohmann::json sigma;
  switch (ds.sigma_x.kind) {
    case DesignCovariance::Kind::Identity:
      sigma = {{"kind", "identity"}};
      break;
    case DesignCovariance::Kind::Toeplitz:
      sigma = {{"kind", "toeplitz"}, {"rho", ds.sigma_x.rho}};
      break;
    case DesignCovariance::Kind::Explicit:
      sigma = {{"kind", "explicit"}, {"matrix", row_major(ds.sigma_x.explicit_matrix)}};
      break;
  }
  return {
      {"format", kFormat},
      {"version", kVersion},
      {"d", x.cols()},
      {"M", x.rows()},
      {"lambda", ds.model.lambda()},
      {"X", std::vector<double>(x.data(), x.data() + x.size())},
      {"y", to_std(ds.model.labels())},
      {"theta_s", to_std(ds.theta_s)},
      {"sigma_x", sigma},
      {"seed", ds.seed},
  };
}

LogisticDataset dataset_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat) throw ConfigError("dataset: unrecognized format tag");
    if (doc.at("version").get<int>() != kVersion) throw ConfigError("dataset: unsupported version");
    const auto d = doc.at("d").get<Eigen::Index>();
    const auto m = doc.at("M").get<Eigen::Index>();
    const auto flat = doc.at("X").get<std::vector<double>>();
    const auto labels = doc.at("y").get<std::vector<double>>();
    if (d < 1 || m < 1 || static_cast<Eigen::Index>(flat.size()) != d * m || static_cast<Eigen::Index>(labels.size()) != m)
      throw ConfigError("dataset: X / y sizes do not match d and M");
    RowMatrix x = Eigen::Map<const RowMatrix>(flat.data(), m, d);

    DesignCovariance sigma;
    const auto& s = doc.at("sigma_x");
    const auto kind = s.at("kind").get<std::string>();
    if (kind == "identity") {
      sigma.kind = DesignCovariance::Kind::Identity;
    } else if (kind == "toeplitz") {
      sigma.kind = DesignCovariance::Kind::Toeplitz;
      sigma.rho = s.at("rho").get<double>();
    } else if (kind == "explicit") {
      sigma.kind = DesignCovariance::Kind::Explicit;
      const auto entries = s.at("matrix").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(entries.size()) != d * d) throw ConfigError("dataset: sigma_x matrix has wrong size");
      sigma.explicit_matrix = Eigen::Map<const RowMatrix>(entries.data(), d, d);
    } else {
      throw ConfigError("dataset: unknown sigma_x kind '" + kind + "'");
    }
    LogisticModel model(std::move(x), to_vector(labels), doc.at("lambda").get<double>());
    return {std::move(model), to_vector(doc.at("theta_s").get<std::vector<double>>()), sigma,
            doc.at("seed").get<std::uint64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("dataset: ") + e.what());
  }
}

void save_dataset(const LogisticDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write dataset to " + path.string());
  out << dataset_to_json(dataset).dump() << '\n';
  if (!out) throw IoError("failed writing dataset to " + path.string());
}

LogisticDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("dataset " + path.string() + ": " + e.what());
  }
  return dataset_from_json(doc);
}

}  // namespace sgdci::models
