#pragma once

#include <cstdint>
#include <random>

namespace aisdb {

/// Portable uniform draws in [-1, 1) from a seeded 64-bit Mersenne Twister.
/// The engine's output sequence is fixed by the standard; the conversion to
/// double is done here so results do not depend on the library's distributions.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  double next() { return 2.0 * unit() - 1.0; }

  /// [0, 1)
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 of (base, index); gives each window or track an independent stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace aisdb
