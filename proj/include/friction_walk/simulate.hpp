// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "friction_walk/kernel.hpp"
#include "friction_walk/random.hpp"
#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Discrete skeleton chain (K_n, lambda_n, T_n) of the jump process.
struct SkeletonPath {
  std::vector<Vec3> momenta;   ///< K_0 .. K_n
  std::vector<double> waits;   ///< unit exponentials lambda_0 .. lambda_{n-1}
  std::vector<double> times;   ///< jump times T_0 = 0 .. T_n
  bool absorbed = false;       ///< |K| underflowed to exactly 0 (path truncated)

  std::size_t steps() const { return waits.size(); }
  Vec3 direction(std::size_t j) const { return momenta[j].normalized(); }
  double radius(std::size_t j) const { return momenta[j].norm(); }
  /// D_j = log R_j - log R_{j-1}, j >= 1.
  double log_increment(std::size_t j) const {
    return std::log(momenta[j].norm()) - std::log(momenta[j - 1].norm());
  }
};

/// Piecewise-linear position path on top of a skeleton; exact at any t.
class Trajectory {
 public:
  Trajectory(PhysParams params, Vec3 x0, SkeletonPath skeleton);

  const PhysParams& params() const { return params_; }
  const Vec3& x0() const { return x0_; }
  const SkeletonPath& skeleton() const { return skel_; }
  double horizon() const { return skel_.times.back(); }

  /// Exact position at time t in [0, T_n] (any t >= T_n if absorbed).
  Vec3 position(double t) const;
  /// Momentum K_t = K_{N_t}.
  Vec3 momentum(double t) const;
  /// Position at the j-th jump time.
  const Vec3& position_at_jump(std::size_t j) const { return jump_positions_[j]; }

 private:
  std::size_t segment_index(double t) const;

  PhysParams params_;
  Vec3 x0_;
  SkeletonPath skel_;
  std::vector<Vec3> jump_positions_;  ///< X(T_0) .. X(T_n)
};

/// N_t: number of jumps up to time t (a jump at exactly t is counted).
/// Throws OutOfRangeError if t exceeds the simulated horizon of a
/// non-absorbed path.
std::size_t jump_count(const SkeletonPath& path, double t);

/// Simulate the skeleton chain for n_steps jumps from k0 (|k0| > 0).
SkeletonPath simulate_skeleton(const PhysParams& p, const Vec3& k0, std::size_t n_steps,
                               RandomStream& stream);

/// Simulate until the jump times cover t_max. Throws ResourceLimitError if
/// more than jump_cap jumps are needed.
Trajectory simulate_trajectory(const PhysParams& p, const Vec3& x0, const Vec3& k0, double t_max,
                               RandomStream& stream, std::uint64_t jump_cap = 100000000ull);

/// X(theta^{-n s})/sqrt(n) for each s in the nondecreasing grid.
std::vector<Vec3> rescaled_path(const Trajectory& traj, std::size_t n, double theta,
                                const std::vector<double>& s_grid);

/// Per-trajectory terminal states plus order-independent summary statistics.
struct EnsembleSummary {
  struct Terminal {
    Vec3 x;
    Vec3 k;
    std::uint64_t jumps = 0;
    bool absorbed = false;
  };
  std::vector<Terminal> terminals;  ///< indexed by trajectory
  Vec3 mean_x{};
  Vec3 mean_k{};
  double mean_k_norm = 0.0;
  double mean_abs_displacement = 0.0;  ///< mean |X_t - x0|
  double mean_jumps = 0.0;
};

/// Deterministic seeded ensemble: trajectory i uses substream (base_seed, i).
/// Results are identical for any thread count; reductions run in index order.
EnsembleSummary run_ensemble(const PhysParams& p, const Vec3& x0, const Vec3& k0, double t_max,
                             std::size_t count, std::uint64_t base_seed, unsigned threads = 1,
                             std::uint64_t jump_cap = 100000000ull);

/// Run fn(i) for i in [0, count) over `threads` workers, blocking until done.
/// fn must only write to per-index slots.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

/// Worker count: explicit request, else FRICTION_WALK_THREADS, else 1.
unsigned resolve_threads(int requested);

}  // namespace friction_walk
