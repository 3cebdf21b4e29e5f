// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "friction_walk/constants.hpp"
#include "friction_walk/kernel.hpp"
#include "friction_walk/vec3.hpp"

namespace friction_walk {

/// Martingale decomposition of the sum of lambda_j Y_j: h solves
/// (1-P)h = V with h(y,l) = l y + (b/(1-b)) y, and the increments
/// Y'_j = h(Y_j,lambda_j) - Ph(Y_{j-1},lambda_{j-1}) form a martingale
/// difference sequence.
struct MartingaleDecomposition {
  double b;

  explicit MartingaleDecomposition(double b_) : b(b_) {}
  double coeff() const { return b / (1.0 - b); }
  Vec3 h(const Vec3& y, double lambda) const { return (lambda + coeff()) * y; }
  Vec3 ph(const Vec3& y) const { return coeff() * y; }
  /// Y'_j = (lambda_j + b/(1-b)) Y_j - (b/(1-b)) Y_{j-1}.
  Vec3 increment(const Vec3& y_prev, const Vec3& y, double lambda) const {
    return (lambda + coeff()) * y - coeff() * y_prev;
  }
  /// Bound |Y'_j| <= lambda_j + 2b/(1-b).
  double increment_bound(double lambda) const { return lambda + 2.0 * coeff(); }
};

/// Coefficients of the conditional second moment of the direction chain:
/// E(Y_{j}^a Y_{j}^b | Y_{j-1}=y) = iso * delta_ab + aniso * y^a y^b.
struct DirectionMomentCoeffs {
  double iso;
  double aniso;
};
DirectionMomentCoeffs direction_second_moment(double a);

/// One sub-result of a statistical check.
struct Metric {
  std::string label;
  double estimate = 0.0;
  double target = 0.0;
  double tolerance = 0.0;  ///< |estimate - target| must not exceed this
  bool pass = false;
};

/// Reproducible check outcome: deterministic function of (seed, parameters).
struct StatReport {
  std::string name;
  std::vector<Metric> metrics;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string sample_sizes;
  double wall_time_ms = 0.0;

  void finish();  ///< sets pass from the metrics
};

// --- individual checks -----------------------------------------------------

/// One-jump drift Sigma(k) E(k'-k) vs -eta |k| k (componentwise 3 se, 3%).
StatReport check_drift(const PhysParams& p, const Vec3& k0, std::size_t n_samples,
                       std::uint64_t seed);

/// Kernel invariants: energy shell, contraction bounds, scaling-relation and
/// rotation-equivariance KS tests at the 1% level.
StatReport check_kernel(const PhysParams& p, std::size_t n_jumps, std::size_t ks_samples,
                        std::uint64_t seed);

/// Closed forms vs quadrature over the a-grid plus exact m=M=1 targets.
StatReport check_constants(const PhysParams& p);

/// Lambda/Legendre consistency (Lambda(0), Lambda'(0), I(log theta), I(-1)).
StatReport check_rate_function(const PhysParams& p);

/// Time-averaged conditional covariance of the martingale increments vs
/// 2 delta/(3(1-b)), via the closed conditional form along a chain of
/// length n (3% Frobenius).
StatReport check_martingale_covariance(const PhysParams& p, std::size_t n, std::uint64_t seed);

/// CLT for S_n = n^{-1/2} sum lambda_j Y_j: variance within 5%, off-diagonal
/// and disjoint-increment correlations <= 0.05, KS normality at 1%.
StatReport check_clt(const PhysParams& p, std::size_t n, std::size_t ensemble, std::uint64_t seed,
                     unsigned threads);

/// LLN for jump counts: 90th percentile of sup_s |N_{theta^{-ns}}/n - s|.
StatReport check_lln_jumpcount(const PhysParams& p, std::size_t n, double s0,
                               std::size_t ensemble, std::uint64_t seed, unsigned threads);

/// Large-deviation tail rates of log R_n - log R_0 at x = log theta +/- 0.3
/// vs the Legendre transform I(x), within +/-0.15. Uses exponential-tilting
/// importance sampling (the i.i.d. D_j radial chain); a direct estimator has
/// no events on the upper tail at these scales.
StatReport check_ldp_tails(const PhysParams& p, std::size_t n, std::size_t ensemble,
                           std::uint64_t seed, std::optional<std::vector<double>> x_list = {});

/// Median log-log momentum decay slope over t in [1e3, 1e6] vs -1.
StatReport check_momentum_decay(const PhysParams& p, const Vec3& k0, std::size_t ensemble,
                                std::uint64_t seed, unsigned threads);

/// Bounded-mean / divergent-absolute-mean dichotomy of the position.
StatReport check_position_moments(const PhysParams& p, const Vec3& x0, const Vec3& k0,
                                  std::size_t ensemble, std::uint64_t seed, unsigned threads);

/// Grid surrogate of the Brownian limit: variance sigma^2 s within 15%,
/// disjoint-increment correlations <= 0.05, componentwise KS at s=1.
StatReport check_brownian_limit(const PhysParams& p, std::size_t n, std::size_t ensemble,
                                std::uint64_t seed, unsigned threads);

/// Generator consistency: one-step Duhamel rate vs advection + collision
/// terms for a Gaussian bump test function.
StatReport check_generator(const PhysParams& p, const Vec3& x0, const Vec3& k0, double dt,
                           std::size_t n_samples, std::uint64_t seed);

// --- registry for the verify subcommand ------------------------------------

struct CheckConfig {
  PhysParams params{1.0, 1.0};
  Vec3 x0{0.0, 0.0, 0.0};
  Vec3 k0{1.0, 0.0, 0.0};
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Override the default chain length / sample count when positive.
  long long n = -1;
  /// Override the default ensemble size when positive.
  long long ensemble = -1;
};

std::vector<std::string> check_names();
StatReport run_check(const std::string& name, const CheckConfig& cfg);

}  // namespace friction_walk
