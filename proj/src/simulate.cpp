// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "friction_walk/compensated.hpp"
#include "friction_walk/errors.hpp"

namespace friction_walk {

SkeletonPath simulate_skeleton(const PhysParams& p, const Vec3& k0, std::size_t n_steps,
                               RandomStream& stream) {
  if (!k0.finite()) throw DomainError("simulate_skeleton: k0 has non-finite component");
  if (k0.norm2() == 0.0) throw ZeroMomentumError("simulate_skeleton: |k0| = 0");
  SkeletonPath path;
  path.momenta.reserve(n_steps + 1);
  path.times.reserve(n_steps + 1);
  path.waits.reserve(n_steps);
  path.momenta.push_back(k0);
  path.times.push_back(0.0);
  CompensatedSum clock;
  for (std::size_t j = 0; j < n_steps; ++j) {
    const Vec3& k = path.momenta.back();
    const double lambda = stream.exponential();
    clock.add(lambda / scattering_rate(p, k));
    path.waits.push_back(lambda);
    path.times.push_back(clock.value());
    const Vec3 next = sample_jump(p, k, stream);
    path.momenta.push_back(next);
    if (next.norm2() == 0.0) {
      path.absorbed = true;
      break;
    }
  }
  return path;
}

Trajectory::Trajectory(PhysParams params, Vec3 x0, SkeletonPath skeleton)
    : params_(std::move(params)), x0_(x0), skel_(std::move(skeleton)) {
  jump_positions_.reserve(skel_.times.size());
  CompensatedVec3 acc;
  jump_positions_.push_back(x0_);
  for (std::size_t j = 0; j + 1 < skel_.times.size(); ++j) {
    const double dt = skel_.times[j + 1] - skel_.times[j];
    acc.add(skel_.momenta[j] * (dt / params_.m()));
    jump_positions_.push_back(x0_ + acc.value());
  }
}

std::size_t Trajectory::segment_index(double t) const {
  if (t < 0.0) throw OutOfRangeError("Trajectory: t < 0");
  if (t > skel_.times.back() && !skel_.absorbed) {
    throw OutOfRangeError("Trajectory: t beyond simulated horizon");
  }
  // last jump index with T_j <= t
  const auto it = std::upper_bound(skel_.times.begin(), skel_.times.end(), t);
  return static_cast<std::size_t>(it - skel_.times.begin()) - 1;
}

Vec3 Trajectory::position(double t) const {
  const std::size_t j = segment_index(t);
  return jump_positions_[j] + skel_.momenta[j] * ((t - skel_.times[j]) / params_.m());
}

Vec3 Trajectory::momentum(double t) const { return skel_.momenta[segment_index(t)]; }

std::size_t jump_count(const SkeletonPath& path, double t) {
  if (t < 0.0) throw OutOfRangeError("jump_count: t < 0");
  if (t > path.times.back() && !path.absorbed) {
    throw OutOfRangeError("jump_count: t beyond simulated horizon; extend the path");
  }
  const auto begin = path.times.begin() + 1;  // T_0 = 0 is not a jump
  return static_cast<std::size_t>(std::upper_bound(begin, path.times.end(), t) - begin);
}

Trajectory simulate_trajectory(const PhysParams& p, const Vec3& x0, const Vec3& k0, double t_max,
                               RandomStream& stream, std::uint64_t jump_cap) {
  if (!(t_max > 0.0)) throw DomainError("simulate_trajectory: t_max must be positive");
  if (!k0.finite() || !x0.finite()) throw DomainError("simulate_trajectory: non-finite input");
  if (k0.norm2() == 0.0) throw ZeroMomentumError("simulate_trajectory: |k0| = 0");

  SkeletonPath path;
  path.momenta.push_back(k0);
  path.times.push_back(0.0);
  CompensatedSum clock;
  while (clock.value() < t_max && !path.absorbed) {
    if (path.waits.size() >= jump_cap) {
      throw ResourceLimitError("simulate_trajectory: jump cap exceeded before t_max");
    }
    const Vec3& k = path.momenta.back();
    const double lambda = stream.exponential();
    clock.add(lambda / scattering_rate(p, k));
    path.waits.push_back(lambda);
    path.times.push_back(clock.value());
    const Vec3 next = sample_jump(p, k, stream);
    path.momenta.push_back(next);
    if (next.norm2() == 0.0) path.absorbed = true;
  }
  return Trajectory(p, x0, std::move(path));
}

std::vector<Vec3> rescaled_path(const Trajectory& traj, std::size_t n, double theta,
                                const std::vector<double>& s_grid) {
  if (n < 1) throw DomainError("rescaled_path: n must be >= 1");
  std::vector<Vec3> out;
  out.reserve(s_grid.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (const double s : s_grid) {
    const double t = std::pow(theta, -static_cast<double>(n) * s);
    if (t > traj.horizon() && !traj.skeleton().absorbed) {
      throw OutOfRangeError("rescaled_path: trajectory does not cover theta^{-n s}");
    }
    out.push_back(traj.position(t) * scale);
  }
  return out;
}

void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const unsigned n_workers = std::min<std::size_t>(threads, count);
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("FRICTION_WALK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

EnsembleSummary run_ensemble(const PhysParams& p, const Vec3& x0, const Vec3& k0, double t_max,
                             std::size_t count, std::uint64_t base_seed, unsigned threads,
                             std::uint64_t jump_cap) {
  if (count < 1) throw DomainError("run_ensemble: count must be >= 1");
  EnsembleSummary summary;
  summary.terminals.resize(count);
  std::vector<std::string> failures(count);
  parallel_for_index(count, threads, [&](std::size_t i) {
    try {
      RandomStream stream(base_seed, i);
      const Trajectory traj = simulate_trajectory(p, x0, k0, t_max, stream, jump_cap);
      const double t_eval = traj.skeleton().absorbed ? std::min(t_max, traj.horizon()) : t_max;
      auto& slot = summary.terminals[i];
      slot.x = traj.position(t_eval);
      slot.k = traj.momentum(t_eval);
      slot.jumps = traj.skeleton().steps();
      slot.absorbed = traj.skeleton().absorbed;
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < count; ++i) {
    if (!failures[i].empty()) {
      throw ResourceLimitError("run_ensemble: trajectory " + std::to_string(i) + ": " +
                               failures[i]);
    }
  }
  // index-ordered compensated reductions keep the summary schedule-independent
  CompensatedVec3 sx, sk;
  CompensatedSum skn, sdisp, sjumps;
  for (const auto& t : summary.terminals) {
    sx.add(t.x);
    sk.add(t.k);
    skn.add(t.k.norm());
    sdisp.add((t.x - x0).norm());
    sjumps.add(static_cast<double>(t.jumps));
  }
  const double inv = 1.0 / static_cast<double>(count);
  summary.mean_x = sx.value() * inv;
  summary.mean_k = sk.value() * inv;
  summary.mean_k_norm = skn.value() * inv;
  summary.mean_abs_displacement = sdisp.value() * inv;
  summary.mean_jumps = sjumps.value() * inv;
  return summary;
}

}  // namespace friction_walk
