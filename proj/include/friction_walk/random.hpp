// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Counter-based pseudo-random stream (splitmix64 core).
///
/// Substreams are derived from (base_seed, index) so that trajectory i of an
/// ensemble draws the same numbers regardless of execution order or thread
/// count. Draw algorithms are implemented here rather than taken from
/// <random> because the standard leaves normal/uniform generation
/// implementation-defined, which would break the byte-identical-output
/// contract across toolchains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(mix(seed ^ kSeedSalt)) {}

  /// Substream for trajectory `index` of an ensemble seeded with `base_seed`.
  RandomStream(std::uint64_t base_seed, std::uint64_t index)
      : state_(mix(mix(base_seed ^ kSeedSalt) + mix(index + kIndexSalt))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unit-mean exponential via the exact inverse CDF, -log(1-u), u in [0,1).
  double exponential() { return -std::log1p(-uniform01()); }

  /// Standard normal (Marsaglia polar method, spare cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Uniform direction on S^2: three independent normals, normalized.
  Vec3 unit_sphere() {
    while (true) {
      const Vec3 v{normal(), normal(), normal()};
      const double r2 = v.norm2();
      if (r2 > 0.0) return v / std::sqrt(r2);
    }
  }

 private:
  static constexpr std::uint64_t kSeedSalt = 0x5851f42d4c957f2dull;
  static constexpr std::uint64_t kIndexSalt = 0x14057b7ef767814full;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace friction_walk
