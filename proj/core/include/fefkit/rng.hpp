#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fefkit {

/// Stream identifiers. Keep these values stable: they are part of the
/// (seed, index) -> state reproducibility contract.
enum class Stream : std::uint64_t {
  raw_density = 0x01,
  fig2_mixture = 0x02,
  werner = 0x03,
  lower_family = 0x04,
  upper_family = 0x05,
  optimizer_start = 0x10,
  local_unitary = 0x20,
  test = 0xF0,
};

/// Counter-keyed generator: mt19937_64 seeded from a SplitMix64 hash of
/// (seed, index, stream). Doubles are taken from the top 53 bits, so the
/// output is identical on every conforming platform.
class KeyedRng {
 public:
  static constexpr std::string_view kName = "fefkit-keyed-mt64/v1";

  KeyedRng(std::uint64_t seed, std::uint64_t index, Stream stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace fefkit
