// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/meanfield.hpp"

#include <cmath>

#include "friction_walk/errors.hpp"

namespace friction_walk {

MeanFieldState::MeanFieldState(const PhysParams& p, Vec3 x0_, Vec3 k0_)
    : k0(k0_), x0(x0_), eta(p.eta()), m(p.m()) {
  if (!k0.finite() || !x0.finite()) throw DomainError("MeanFieldState: non-finite input");
  if (k0.norm2() == 0.0) throw ZeroMomentumError("MeanFieldState: |k0| = 0");
}

Vec3 meanfield_momentum(const MeanFieldState& st, double t) {
  if (t < 0.0) throw DomainError("meanfield_momentum: t < 0");
  const double r0 = st.k0.norm();
  return st.k0 * (1.0 / (r0 * (st.eta * t + 1.0 / r0)));
}

Vec3 meanfield_position(const MeanFieldState& st, double t) {
  if (t < 0.0) throw DomainError("meanfield_position: t < 0");
  const double r0 = st.k0.norm();
  const double scale = std::log1p(st.eta * r0 * t) / (st.m * st.eta * r0);
  return st.x0 + st.k0 * scale;
}

double residual_ode(const MeanFieldState& st, double t, double h) {
  if (!(h > 0.0)) throw DomainError("residual_ode: h must be positive");
  const double lo = std::max(t - h, 0.0);
  const Vec3 dk = (meanfield_momentum(st, t + h) - meanfield_momentum(st, lo)) / (t + h - lo);
  const Vec3 k = meanfield_momentum(st, t);
  return (dk + st.eta * k.norm() * k).norm();
}

}  // namespace friction_walk
