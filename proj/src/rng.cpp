#include "sgdci/rng.hpp"

namespace sgdci {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, Stream stream, std::uint64_t index) noexcept {
  const auto tag = static_cast<std::uint64_t>(stream);
  return mix64(mix64(parent ^ mix64(tag)) + mix64(index + kGolden));
}

Rng make_rng(std::uint64_t parent, Stream stream, std::uint64_t index) {
  const std::uint64_t s = derive_seed(parent, stream, index);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Rng(seq);
}

}  // namespace sgdci
