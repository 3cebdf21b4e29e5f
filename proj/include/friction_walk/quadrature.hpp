// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace friction_walk {

/// Adaptive Gauss-Legendre integration of f over [lo, hi] to the given
/// absolute tolerance. Subdivides intervals whose 15-point estimate disagrees
/// with the sum of its halves; depth-limited so integrable endpoint
/// singularities terminate.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-11, int max_depth = 60);

}  // namespace friction_walk
