#include "fefkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace fefkit {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t index, Stream stream) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ index);
  k = splitmix64(k ^ static_cast<std::uint64_t>(stream));
  return k;
}

}  // namespace

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t index, Stream stream)
    : engine_(derive_key(seed, index, stream)) {}

double KeyedRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double KeyedRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace fefkit
