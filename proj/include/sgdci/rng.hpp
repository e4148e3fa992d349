#pragma once

#include <cstdint>
#include <random>

namespace sgdci {

using Rng = std::mt19937_64;

/// Purpose tags for independent substreams. The numeric values are part of
/// the reproducibility contract: changing them changes every result.
enum class Stream : std::uint64_t {
  Replication = 1,
  Init = 2,
  Data = 3,
  Weights = 4,
  Oracle = 5,
  Dataset = 6,
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for (parent, stream, index):
///   mix64(mix64(parent ^ mix64(tag)) + mix64(index + golden))
/// Distinct (stream, index) pairs give unrelated seeds, and the result does
/// not depend on the order in which children are requested.
std::uint64_t derive_seed(std::uint64_t parent, Stream stream, std::uint64_t index = 0) noexcept;

Rng make_rng(std::uint64_t parent, Stream stream, std::uint64_t index = 0);

}  // namespace sgdci
