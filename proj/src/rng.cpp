#include "cubal/rng.hpp"

#include <cmath>

namespace cubal {

double SplitMix64::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u clamped away from 0 so log stays finite.
  double u = uniform01();
  if (u < 0x1.0p-60) u = 0x1.0p-60;
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * M_PI * v;
  spare_ = r * std::sin(angle);
  have_spare_ = true;
  return r * std::cos(angle);
}

SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64::scramble(SplitMix64::scramble(seed) + index));
}

Eigen::VectorXd random_unit_vector(SplitMix64& gen, int dim) {
  Eigen::VectorXd v(dim);
  while (true) {
    for (int i = 0; i < dim; ++i) v[i] = gen.gaussian();
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

}  // namespace cubal
