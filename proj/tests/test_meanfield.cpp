// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "friction_walk/errors.hpp"
#include "friction_walk/meanfield.hpp"

using namespace friction_walk;

namespace {
const PhysParams kP(1.0, 1.0);
}

TEST_CASE("initial conditions") {
  const MeanFieldState st(kP, {1, 2, 3}, {0, 1, 0});
  CHECK((meanfield_momentum(st, 0.0) - Vec3{0, 1, 0}).norm() <= 1e-15);
  CHECK((meanfield_position(st, 0.0) - Vec3{1, 2, 3}).norm() <= 1e-15);
  CHECK_THROWS_AS(MeanFieldState(kP, {0, 0, 0}, {0, 0, 0}), ZeroMomentumError);
}

TEST_CASE("momentum magnitude milestones") {
  // eta = pi/2, |k0| = 1: |K| halves at t = 2/pi
  const MeanFieldState st(kP, {0, 0, 0}, {1, 0, 0});
  CHECK(meanfield_momentum(st, 2.0 / M_PI).norm() == doctest::Approx(0.5).epsilon(1e-14));
  // t -> infinity: |K| ~ 1/(eta t)
  const double t = 1e6;
  CHECK(meanfield_momentum(st, t).norm() ==
        doctest::Approx(1.0 / (st.eta * t)).epsilon(1e-5));
  // direction never rotates
  const Vec3 k = meanfield_momentum(st, 123.0);
  CHECK(k.y == 0.0);
  CHECK(k.z == 0.0);
  CHECK(k.x > 0.0);
}

TEST_CASE("position derivative and log growth") {
  const MeanFieldState st(kP, {0, 0, 0}, {1, 0, 0});
  const double h = 1e-8;
  const Vec3 v = (meanfield_position(st, h) - meanfield_position(st, 0.0)) / h;
  CHECK(std::abs(v.x - 1.0) <= 1e-6);
  // |X_t - x0| approaches (2/pi) log(pi t / 2) as t grows
  const double t = 1e6;
  const double dist = (meanfield_position(st, t) - st.x0).norm();
  CHECK(std::abs(dist - (2.0 / M_PI) * std::log(M_PI * t / 2.0)) <= 1e-5);
}

TEST_CASE("ode residual of the exact solution") {
  const MeanFieldState st(kP, {0, 0, 0}, {1, 0, 0});
  CHECK(std::abs(residual_ode(st, 1.0, 1e-4)) <= 1e-6);
  CHECK(std::abs(residual_ode(st, 1e-4, 1e-4)) <= 1e-6);
  // second-order stencil: halving h quarters the residual
  const double r1 = std::abs(residual_ode(st, 0.05, 1e-2));
  const double r2 = std::abs(residual_ode(st, 0.05, 5e-3));
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
}
