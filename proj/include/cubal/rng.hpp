#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace cubal {

/// Counter-seedable splitmix64 stream with a hand-rolled Box-Muller
/// transform. std::normal_distribution is implementation-defined, so the
/// restart enumeration would not be reproducible across toolchains with it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double gaussian();

  /// One scrambling round; usable as a stateless 64-bit hash.
  static std::uint64_t scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Independent stream for restart `index` of run `seed`.
SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t index);

/// Gaussian direction normalized to the Euclidean unit sphere.
Eigen::VectorXd random_unit_vector(SplitMix64& gen, int dim);

}  // namespace cubal
