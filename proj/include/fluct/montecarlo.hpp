#pragma once

#include <cstdint>

#include "fluct/geometry.hpp"

namespace fluct {

/// Counter-based generator: the k-th draw of stream s under seed is a pure
/// function of (seed, s, k), so any partition of the work reproduces the same
/// numbers.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * 0x9e3779b97f4a7c15ULL); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

/// Map three uniforms to a point distributed uniformly (by measure) in the
/// region. u[0] selects the part and is rescaled for reuse inside it.
Vec3 sample_region(const Region& r, const double u[3]);

/// Number of strata used by mc_pair_oracle.
inline constexpr int kMonteCarloStrata = 64;

}  // namespace fluct
