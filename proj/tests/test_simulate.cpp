// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "friction_walk/compensated.hpp"
#include "friction_walk/constants.hpp"
#include "friction_walk/errors.hpp"
#include "friction_walk/simulate.hpp"
#include "friction_walk/stats.hpp"

using namespace friction_walk;

namespace {
const PhysParams kP(1.0, 1.0);
}

TEST_CASE("empty skeleton") {
  RandomStream rng(1);
  const SkeletonPath path = simulate_skeleton(kP, {1, 0, 0}, 0, rng);
  CHECK(path.steps() == 0);
  CHECK(path.momenta.size() == 1);
  CHECK(path.times.size() == 1);
  CHECK(path.times[0] == 0.0);
  CHECK(path.momenta[0].x == 1.0);
}

TEST_CASE("no-contraction ray under forced directions") {
  // U_j = K_j/|K_j| every step leaves the momentum fixed
  Vec3 k{0.3, -0.4, 1.2};
  for (int j = 0; j < 20; ++j) {
    k = jump_with_direction(kP, k, k.normalized());
  }
  CHECK((k - Vec3{0.3, -0.4, 1.2}).norm() <= 1e-12);
}

TEST_CASE("waiting time scale") {
  // T_1 ~ Exp(Sigma(k0)); mean 1/pi at k0 = e_x, m = M = 1
  RunningStat t1;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    RandomStream rng(21, i);
    const SkeletonPath path = simulate_skeleton(kP, {1, 0, 0}, 1, rng);
    t1.add(path.times[1]);
  }
  CHECK(std::abs(t1.mean() - 1.0 / M_PI) <= 3.0 * t1.std_error());
}

TEST_CASE("radius is multiplicative in the log increments") {
  RandomStream rng(5);
  const SkeletonPath path = simulate_skeleton(kP, {2, 0, 0}, 200, rng);
  double acc = std::log(2.0);
  for (std::size_t j = 1; j <= path.steps(); ++j) {
    acc += path.log_increment(j);
    CHECK(std::abs(std::log(path.radius(j)) - acc) <= 1e-13 * std::abs(acc) + 1e-13);
  }
}

TEST_CASE("mean log increment matches log theta") {
  // sample mean of D_j over 10^6 steps within 3 se of -1/2
  RunningStat d;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    RandomStream rng(31, i);
    const SkeletonPath path = simulate_skeleton(kP, {1, 0, 0}, 500, rng);
    for (std::size_t j = 1; j <= path.steps(); ++j) d.add(path.log_increment(j));
  }
  CHECK(d.count() == 1000000);
  CHECK(std::abs(d.mean() + 0.5) <= 3.0 * d.std_error());
}

TEST_CASE("jump count conventions") {
  RandomStream rng(7);
  const SkeletonPath path = simulate_skeleton(kP, {1, 0, 0}, 5, rng);
  CHECK(jump_count(path, 0.0) == 0);
  // a jump landing exactly at the query time is counted
  CHECK(jump_count(path, path.times[1]) == 1);
  CHECK(jump_count(path, std::nextafter(path.times[3], 1e300)) == 3);
  CHECK(jump_count(path, path.times.back()) == 5);
  CHECK_THROWS_AS(jump_count(path, path.times.back() * 1.01), OutOfRangeError);
  CHECK_THROWS_AS(jump_count(path, -1.0), OutOfRangeError);
}

TEST_CASE("free flight before the first jump") {
  RandomStream rng(9);
  const Trajectory traj = simulate_trajectory(kP, {1, 2, 3}, {1, 0, 0}, 1e-6, rng);
  const double t = std::min(1e-6, traj.skeleton().times[1]) * 0.5;
  const Vec3 x = traj.position(t);
  CHECK((x - Vec3{1.0 + t, 2.0, 3.0}).norm() <= 1e-15);
}

TEST_CASE("position increments reduce to weighted directions") {
  // X(T_n) - x0 = position_prefactor * sum_{j<n} lambda_j Y_j, exactly the
  // per-segment free flight collapsed through Sigma(k) = rate_coeff |k|
  RandomStream rng(13);
  const SkeletonPath path = simulate_skeleton(kP, {0.5, 0.5, 0}, 50, rng);
  const Trajectory traj(kP, {0, 0, 0}, path);
  CompensatedVec3 acc;
  for (std::size_t j = 0; j < path.steps(); ++j) {
    acc.add(path.waits[j] * path.direction(j));
  }
  const Vec3 predicted = kP.position_prefactor() * acc.value();
  const Vec3 actual = traj.position_at_jump(path.steps());
  CHECK((actual - predicted).norm() <= 1e-12 * (1.0 + predicted.norm()));
}

TEST_CASE("trajectory horizon guard") {
  RandomStream rng(17);
  const Trajectory traj = simulate_trajectory(kP, {0, 0, 0}, {1, 0, 0}, 10.0, rng);
  CHECK(traj.horizon() >= 10.0);
  CHECK_THROWS_AS(traj.position(traj.horizon() * 1.5), OutOfRangeError);
}

TEST_CASE("resource cap") {
  RandomStream rng(19);
  CHECK_THROWS_AS(simulate_trajectory(kP, {0, 0, 0}, {1, 0, 0}, 1e6, rng, 3),
                  ResourceLimitError);
}

TEST_CASE("determinism of seeded streams") {
  RandomStream a(42), b(42);
  const SkeletonPath pa = simulate_skeleton(kP, {1, 0, 0}, 100, a);
  const SkeletonPath pb = simulate_skeleton(kP, {1, 0, 0}, 100, b);
  for (std::size_t j = 0; j < pa.momenta.size(); ++j) {
    CHECK(pa.momenta[j].x == pb.momenta[j].x);
    CHECK(pa.times[j] == pb.times[j]);
  }
}

TEST_CASE("ensemble matches single trajectory at count 1") {
  const EnsembleSummary s = run_ensemble(kP, {0, 0, 0}, {1, 0, 0}, 100.0, 1, 77);
  RandomStream rng(77, 0);
  const Trajectory traj = simulate_trajectory(kP, {0, 0, 0}, {1, 0, 0}, 100.0, rng);
  CHECK(s.terminals[0].x.x == traj.position(100.0).x);
  CHECK(s.terminals[0].k.z == traj.momentum(100.0).z);
  CHECK(s.terminals[0].jumps == traj.skeleton().steps());
}

TEST_CASE("ensemble is bit-identical across worker counts") {
  const EnsembleSummary s1 = run_ensemble(kP, {0, 0, 0}, {1, 0, 0}, 1000.0, 64, 5, 1);
  const EnsembleSummary s4 = run_ensemble(kP, {0, 0, 0}, {1, 0, 0}, 1000.0, 64, 5, 4);
  CHECK(s1.mean_x.x == s4.mean_x.x);
  CHECK(s1.mean_k_norm == s4.mean_k_norm);
  CHECK(s1.mean_abs_displacement == s4.mean_abs_displacement);
  CHECK(s1.mean_jumps == s4.mean_jumps);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(s1.terminals[i].x.y == s4.terminals[i].x.y);
    CHECK(s1.terminals[i].jumps == s4.terminals[i].jumps);
  }
}

TEST_CASE("terminal momentum decays with the horizon") {
  const EnsembleSummary early = run_ensemble(kP, {0, 0, 0}, {1, 0, 0}, 1e3, 200, 8, 4);
  const EnsembleSummary late = run_ensemble(kP, {0, 0, 0}, {1, 0, 0}, 1e5, 200, 8, 4);
  CHECK(late.mean_k_norm < early.mean_k_norm);
}

TEST_CASE("rescaled path endpoints") {
  const Constants c = closed_form_constants(kP);
  const std::size_t n = 9;
  RandomStream rng(23);
  const double horizon = std::pow(c.theta, -static_cast<double>(n));
  const Trajectory traj = simulate_trajectory(kP, {0, 0, 0}, {1, 0, 0}, horizon, rng);
  const auto path = rescaled_path(traj, n, c.theta, {0.0, 1.0});
  // s = 0 is X(1)/sqrt(n)
  CHECK((path[0] - traj.position(1.0) / 3.0).norm() <= 1e-15);
  // identical inputs reproduce identical output
  const auto again = rescaled_path(traj, n, c.theta, {0.0, 1.0});
  CHECK(path[1].x == again[1].x);
  CHECK_THROWS_AS(rescaled_path(traj, n, c.theta, {2.0}), OutOfRangeError);
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(3) == 3);
  unsetenv("FRICTION_WALK_THREADS");
  CHECK(resolve_threads(0) == 1);
  setenv("FRICTION_WALK_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  unsetenv("FRICTION_WALK_THREADS");
}
