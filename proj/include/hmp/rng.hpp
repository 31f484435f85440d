#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace hmp {

// Seed expansion: every random stream is keyed by (root seed, stream id) and
// seeded with derive_seed(root, stream) = mix64(root + golden * (stream + 1)),
// where mix64 is the SplitMix64 finalizer. Streams are independent of the
// order in which they are requested.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept;

/// Seeded 64-bit generator. Bounded draws use rejection so results do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hmp
