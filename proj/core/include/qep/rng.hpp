#pragma once

#include "qep/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qep {

/// Seedable pseudo-random source used by every sampling routine in the
/// library. The algorithm is pinned so that drawn points reproduce across
/// implementations: std::mt19937_64 with the draw disciplines below.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1): (next_u64() >> 11) * 2^-53.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller on two uniform01 draws; the cosine
  /// branch is returned first, the sine branch on the next call.
  double gaussian();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Inverse standard normal CDF, solved by Newton iteration on erfc.
double inverse_normal_cdf(double p);

/// Deterministic direction net: `count` low-discrepancy unit vectors
/// (additive-recurrence sequence mapped through the normal quantile and
/// normalized) followed by the 2n signed coordinate axes.
std::vector<Vector> direction_net(Index dimension, std::size_t count);

}  // namespace qep
