#pragma once

#include <cstdint>
#include <random>

namespace swr {

/// SplitMix64 step. Used to derive independent seeds from (seed, stream).
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random source used everywhere randomness is needed.
///
/// Engine: std::mt19937_64 (bit-exact across standard libraries).
/// Uniform doubles take the top 53 bits of one draw. Normal deviates use the
/// Box-Muller transform over two uniforms, caching the second deviate.
/// Integer draws use rejection sampling. None of this depends on the
/// implementation-defined std distributions, so streams are reproducible
/// across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed derived from a parent seed and a stream index.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ULL)));
  }

  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swr
