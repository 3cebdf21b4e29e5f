// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "friction_walk/kernel.hpp"
#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Fluctuation-free approximation: the deterministic friction ODE
/// dK/dt = -eta |K| K and its exact solution. The direction of K is
/// constant and |K| is strictly decreasing.
struct MeanFieldState {
  Vec3 k0;
  Vec3 x0;
  double eta;
  double m;

  /// Throws on |k0| = 0 or non-positive eta/m.
  MeanFieldState(const PhysParams& p, Vec3 x0_, Vec3 k0_);
};

/// K_t = (eta t + 1/|k0|)^{-1} k0/|k0|.
Vec3 meanfield_momentum(const MeanFieldState& st, double t);

/// x0 + (k0/(m eta |k0|)) log(1 + eta |k0| t), the exact time integral of
/// the momentum solution.
Vec3 meanfield_position(const MeanFieldState& st, double t);

/// Central-difference residual of the ODE at time t with stencil width h;
/// O(h^2) for the exact solution.
double residual_ode(const MeanFieldState& st, double t, double h);

}  // namespace friction_walk
