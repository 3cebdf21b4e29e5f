// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "friction_walk/errors.hpp"
#include "friction_walk/kernel.hpp"
#include "friction_walk/random.hpp"
#include "friction_walk/stats.hpp"

using namespace friction_walk;

TEST_CASE("phys params validation") {
  CHECK_THROWS_AS(PhysParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhysParams(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(PhysParams(1.0, 1.0, 0.5), DomainError);
  const PhysParams p(1.0, 1.0);
  CHECK(p.mass_ratio() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.eta() == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(p.rate_coeff() == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(p.position_prefactor() == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
}

TEST_CASE("kinetic energies") {
  const PhysParams p1(1.0, 1.0);
  CHECK(epsilon(p1, {1, 0, 0}) == 0.5);
  CHECK(epsilon(p1, {0, 0, 0}) == 0.0);
  const PhysParams p2(2.0, 1.0);
  CHECK(epsilon(p2, {0, 3, 4}) == 6.25);

  CHECK(omega(p1, {1, 0, 0}) == 0.5);
  CHECK(omega(p1, {0, 0, 0}) == 0.0);
  const PhysParams p3(1.0, 0.5);
  CHECK(omega(p3, {1, 1, 0}) == 2.0);
}

TEST_CASE("energy residual on the shell") {
  const PhysParams p(1.0, 1.0);
  CHECK(energy_residual(p, {1, 0, 0}, {0.5, 0, 0.5}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(energy_residual(p, {1, 0, 0}, {1, 0, 0}) == 0.0);
  // at a = 1/2 the antipodal landing point is the origin
  CHECK(energy_residual(p, {1, 0, 0}, {0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
  // off-shell point
  CHECK(energy_residual(p, {1, 0, 0}, {0.9, 0, 0}) != 0.0);
}

TEST_CASE("jump landing points") {
  const PhysParams p(1.0, 1.0);
  const Vec3 hit = jump_with_direction(p, {1, 0, 0}, {0, 0, 1});
  CHECK(hit.x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hit.y == 0.0);
  CHECK(hit.z == doctest::Approx(0.5).epsilon(1e-15));
  // U along k: no momentum loss
  const Vec3 same = jump_with_direction(p, {0, 2, 0}, {0, 1, 0});
  CHECK(same.y == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("jump magnitude distribution at equal masses") {
  // E|k'| = E sqrt((1+t)/2), t ~ Uniform[-1,1], = int_0^1 sqrt(u) du = 2/3
  const PhysParams p(1.0, 1.0);
  RandomStream rng(11);
  RunningStat mag;
  for (int i = 0; i < 200000; ++i) mag.add(sample_jump(p, {1, 0, 0}, rng).norm());
  CHECK(std::abs(mag.mean() - 2.0 / 3.0) <= 3.0 * mag.std_error());
}

TEST_CASE("scattering rate") {
  const PhysParams p(1.0, 1.0);
  CHECK(scattering_rate(p, {1, 0, 0}) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(scattering_rate(p, {0, 0, 0}) == 0.0);
  const Vec3 k{0.1, 0.2, 0.3};
  CHECK(scattering_rate(p, 7.5 * k) ==
        doctest::Approx(7.5 * scattering_rate(p, k)).epsilon(1e-14));
}

TEST_CASE("drift identity ties rate and friction coefficients") {
  // Sigma(k)(a-1)k = -eta |k| k for every k
  const PhysParams p(1.3, 0.4);
  const Vec3 k{0.2, -1.1, 0.7};
  const Vec3 lhs = scattering_rate(p, k) * (p.mass_ratio() - 1.0) * k;
  const Vec3 rhs = -p.eta() * k.norm() * k;
  CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("jump contraction is monotone") {
  const PhysParams p(0.25, 0.75);
  const double beta = std::abs(1.0 - 2.0 * p.mass_ratio());
  RandomStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 k = rng.unit_sphere() * (0.1 + rng.uniform01());
    const double r = sample_jump(p, k, rng).norm();
    CHECK(r <= k.norm() * (1.0 + 1e-12));
    CHECK(r >= beta * k.norm() * (1.0 - 1e-12));
  }
}

TEST_CASE("zero momentum is absorbing") {
  const PhysParams p(1.0, 1.0);
  RandomStream rng(1);
  CHECK_THROWS_AS(sample_jump(p, {0, 0, 0}, rng), ZeroMomentumError);
}
