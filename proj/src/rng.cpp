#include "hmp/rng.hpp"

#include "hmp/errors.hpp"

namespace hmp {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
  return mix64(root + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("Rng::uniform bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace hmp
