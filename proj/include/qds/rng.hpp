#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qds {

/// Deterministic random stream identified by (seed, stream).
///
/// The engine is std::mt19937_64 initialised through std::seed_seq from the
/// four 32-bit halves of seed and stream. Both are fully specified by the
/// standard, and every derived draw below is computed here rather than by
/// std::*_distribution, so sequences are bit-identical across toolchains.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/seed_seq(seed,stream)";

  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased coin.
  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p > 0.0 && uniform01() < p; }

  /// k distinct values drawn uniformly from [0, n), returned sorted.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

  /// k distinct values drawn uniformly from `pool`, returned sorted.
  std::vector<std::size_t> sample_from(std::vector<std::size_t> pool, std::size_t k);

  /// Independent stream derived from this one's seed.
  Rng fork(std::uint64_t stream) const { return Rng(seed_, stream); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Fixed stream ids so each party and channel draws from its own sequence.
namespace streams {
inline constexpr std::uint64_t kAlice = 1;
inline constexpr std::uint64_t kBob = 2;
inline constexpr std::uint64_t kCharlie = 3;
inline constexpr std::uint64_t kChannelAB = 11;
inline constexpr std::uint64_t kChannelAC = 12;
inline constexpr std::uint64_t kChannelBC = 13;
inline constexpr std::uint64_t kChannelCB = 14;
inline constexpr std::uint64_t kQkdAB = 21;
inline constexpr std::uint64_t kQkdAC = 22;
inline constexpr std::uint64_t kQkdBC = 23;
inline constexpr std::uint64_t kAdversary = 31;
inline constexpr std::uint64_t kPhysics = 41;
}  // namespace streams

}  // namespace qds
