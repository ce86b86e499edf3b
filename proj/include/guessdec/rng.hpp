#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace guessdec {

// splitmix64 generator. Deliberately self-contained (no <random>
// distributions) so that seeded runs are reproducible bit for bit across
// standard libraries and across degrees of parallelism.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Standard normal via Box-Muller (cosine branch only).
  double next_gaussian() {
    double u1 = 1.0 - next_double();  // (0, 1], keeps the log finite
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::uint64_t state_;
};

// Stream tags. One frame draws its information word and its channel noise
// from separate substreams so the two can never alias.
inline constexpr std::uint64_t kStreamInfoWord = 0x49u;
inline constexpr std::uint64_t kStreamChannel = 0x43u;
inline constexpr std::uint64_t kStreamCodeGen = 0x47u;
inline constexpr std::uint64_t kStreamSnrProbe = 0x53u;

// Decorrelated child seed for (seed, index, tag).
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) {
  SplitMix64 mix(seed ^ (tag * 0xD6E8FEB86659FD93ull));
  std::uint64_t h = mix.next_u64();
  mix = SplitMix64(h + index);
  return mix.next_u64();
}

}  // namespace guessdec
