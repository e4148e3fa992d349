#pragma once

#include <cstdint>
#include <filesystem>

#include "json.hpp"
#include "sgdci/models/logistic.hpp"

namespace sgdci::models {

/// A fixed logistic design together with how it was generated.
///
/// Snapshot layout (format "sgdci.logistic-dataset", version 1):
///   { "format", "version", "d", "M", "lambda",
///     "X": [M*d doubles, row-major], "y": [M labels],
///     "theta_s": [d], "sigma_x": {"kind": "identity"|"toeplitz"|"explicit",
///     "rho"?, "matrix"? (row-major)}, "seed": u64 }
/// Doubles are written in shortest round-trip form, so reloading reproduces
/// the design bit for bit.
struct LogisticDataset {
  LogisticModel model;
  Vector theta_s;
  DesignCovariance sigma_x;
  std::uint64_t seed = 0;
};

/// Draws a design with make_rng(seed, Stream::Dataset).
LogisticDataset generate_dataset(Eigen::Index d, std::size_t m_rows, const Vector& theta_s,
                                 const DesignCovariance& sigma_x, double lambda, std::uint64_t seed);

nlohmann::json dataset_to_json(const LogisticDataset& dataset);
LogisticDataset dataset_from_json(const nlohmann::json& doc);

void save_dataset(const LogisticDataset& dataset, const std::filesystem::path& path);
LogisticDataset load_dataset(const std::filesystem::path& path);

}  // namespace sgdci::models
