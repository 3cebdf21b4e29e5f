// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Neumaier-compensated accumulator. Jump times and position increments span
/// many orders of magnitude (the scattering rate decays like theta^j), so
/// plain summation loses the small early terms.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double t = sum + value;
    if (std::abs(sum) >= std::abs(value)) {
      compensation += (sum - t) + value;
    } else {
      compensation += (value - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + compensation; }
};

/// Componentwise compensated 3-vector accumulator.
struct CompensatedVec3 {
  CompensatedSum x, y, z;

  void add(const Vec3& v) {
    x.add(v.x);
    y.add(v.y);
    z.add(v.z);
  }

  Vec3 value() const { return {x.value(), y.value(), z.value()}; }
};

}  // namespace friction_walk
