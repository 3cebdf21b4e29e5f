// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

#include "friction_walk/compensated.hpp"
#include "friction_walk/meanfield.hpp"
#include "friction_walk/errors.hpp"
#include "friction_walk/quadrature.hpp"
#include "friction_walk/simulate.hpp"
#include "friction_walk/stats.hpp"

namespace friction_walk {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Metric band(std::string label, double estimate, double target, double tolerance) {
  Metric m;
  m.label = std::move(label);
  m.estimate = estimate;
  m.target = target;
  m.tolerance = tolerance;
  m.pass = std::abs(estimate - target) <= tolerance;
  return m;
}

/// One step of the direction chain Y' = (a y + (1-a) U)/|a y + (1-a) U|.
Vec3 step_direction(double a, const Vec3& y, RandomStream& rng) {
  return (a * y + (1.0 - a) * rng.unit_sphere()).normalized();
}

struct Mat3 {
  std::array<std::array<double, 3>, 3> v{};
  void add_outer(const Vec3& y, double w = 1.0) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) v[r][c] += w * y[r] * y[c];
    }
  }
};

Vec3 rotate(const std::array<std::array<double, 3>, 3>& r, const Vec3& u) {
  return {r[0][0] * u.x + r[0][1] * u.y + r[0][2] * u.z,
          r[1][0] * u.x + r[1][1] * u.y + r[1][2] * u.z,
          r[2][0] * u.x + r[2][1] * u.y + r[2][2] * u.z};
}

/// Rodrigues rotation matrix about `axis` by angle `phi`.
std::array<std::array<double, 3>, 3> rotation_matrix(Vec3 axis, double phi) {
  axis = axis.normalized();
  const double c = std::cos(phi), s = std::sin(phi), t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  return {{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
           {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
           {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}};
}

}  // namespace

void StatReport::finish() {
  pass = true;
  for (const Metric& m : metrics) pass = pass && m.pass;
}

DirectionMomentCoeffs direction_second_moment(double a) {
  const double A = a * a + (1.0 - a) * (1.0 - a);
  const double B = 2.0 * a * (1.0 - a);
  // c2 = E((Y_j . y)^2 | Y_{j-1} = y), reduced to a 1-D integral
  const double c2 = 0.5 * integrate(
                              [&](double t) {
                                const double num = a + (1.0 - a) * t;
                                return num * num / (A + B * t);
                              },
                              -1.0, 1.0, 1e-12);
  return {(1.0 - c2) / 2.0, (3.0 * c2 - 1.0) / 2.0};
}

StatReport check_drift(const PhysParams& p, const Vec3& k0, std::size_t n_samples,
                       std::uint64_t seed) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "drift";
  rep.seed = seed;
  rep.sample_sizes = "n_samples=" + std::to_string(n_samples);

  RandomStream rng(seed);
  const double rate = scattering_rate(p, k0);
  std::array<RunningStat, 3> delta;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const Vec3 d = sample_jump(p, k0, rng) - k0;
    delta[0].add(d.x);
    delta[1].add(d.y);
    delta[2].add(d.z);
  }
  const Vec3 target = -p.eta() * k0.norm() * k0;
  const Vec3 estimate{rate * delta[0].mean(), rate * delta[1].mean(), rate * delta[2].mean()};
  const double rel = (estimate - target).norm() / target.norm();
  rep.metrics.push_back(band("relative_error", rel, 0.0, 0.03));
  for (int c = 0; c < 3; ++c) {
    rep.metrics.push_back(band("component_" + std::to_string(c), estimate[c], target[c],
                               3.0 * rate * delta[c].std_error()));
  }
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_kernel(const PhysParams& p, std::size_t n_jumps, std::size_t ks_samples,
                        std::uint64_t seed) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "kernel";
  rep.seed = seed;
  rep.sample_sizes =
      "n_jumps=" + std::to_string(n_jumps) + " ks_samples=" + std::to_string(ks_samples);

  RandomStream rng(seed);
  const double a = p.mass_ratio();
  const double beta = std::abs(1.0 - 2.0 * a);

  double worst_residual = 0.0;
  std::size_t bound_violations = 0;
  for (std::size_t i = 0; i < n_jumps; ++i) {
    // random momenta over four decades of magnitude
    const double mag = std::pow(10.0, 4.0 * rng.uniform01() - 2.0);
    const Vec3 k = mag * rng.unit_sphere();
    const Vec3 k2 = sample_jump(p, k, rng);
    worst_residual = std::max(
        worst_residual, std::abs(energy_residual(p, k, k2)) / std::max(epsilon(p, k), 1.0));
    const double r = k2.norm(), r0 = k.norm();
    if (r > r0 || r < beta * r0 * (1.0 - 1e-12)) ++bound_violations;
  }
  rep.metrics.push_back(band("max_relative_energy_residual", worst_residual, 0.0, 1e-12));
  rep.metrics.push_back(
      band("contraction_bound_violations", static_cast<double>(bound_violations), 0.0, 0.0));

  // scaling relation: the law of k'/lambda from lambda*k equals that from k
  const Vec3 k_ref{0.3, -0.2, 0.5};
  const double lam = 7.5;
  std::vector<double> mag_a(ks_samples), mag_b(ks_samples), cos_a(ks_samples), cos_b(ks_samples);
  const Vec3 khat = k_ref.normalized();
  for (std::size_t i = 0; i < ks_samples; ++i) {
    const Vec3 ja = sample_jump(p, k_ref, rng);
    const Vec3 jb = sample_jump(p, lam * k_ref, rng) / lam;
    mag_a[i] = ja.norm();
    mag_b[i] = jb.norm();
    cos_a[i] = ja.normalized().dot(khat);
    cos_b[i] = jb.normalized().dot(khat);
  }
  const double crit = ks_critical_two_sample(0.01, ks_samples, ks_samples);
  rep.metrics.push_back(band("scaling_ks_magnitude",
                             ks_statistic_two_sample(std::move(mag_a), std::move(mag_b)), 0.0,
                             crit));
  rep.metrics.push_back(band(
      "scaling_ks_cosangle", ks_statistic_two_sample(std::move(cos_a), std::move(cos_b)), 0.0,
      crit));

  // rotation equivariance, tested through fixed 1-D projections
  const auto rot = rotation_matrix({1.0, 2.0, 3.0}, 1.2);
  const Vec3 probe = Vec3{0.7, -0.4, 0.2}.normalized();
  std::vector<double> proj_a(ks_samples), proj_b(ks_samples);
  for (std::size_t i = 0; i < ks_samples; ++i) {
    proj_a[i] = rotate(rot, sample_jump(p, k_ref, rng)).dot(probe);
    proj_b[i] = sample_jump(p, rotate(rot, k_ref), rng).dot(probe);
  }
  rep.metrics.push_back(band("rotation_ks_projection",
                             ks_statistic_two_sample(std::move(proj_a), std::move(proj_b)), 0.0,
                             crit));
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_constants(const PhysParams& p) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "constants";
  rep.sample_sizes = "a_grid=0.1..0.9";

  double worst_db = 0.0, worst_dlt = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double a = 0.1 * i;
    const PhysParams pa(a, 1.0 - a);  // masses with ratio a
    const Constants c = closed_form_constants(pa);
    worst_db = std::max(worst_db, std::abs(b_by_quadrature(a) - c.b));
    worst_dlt = std::max(worst_dlt, std::abs(logtheta_by_quadrature(a) - c.log_theta));
  }
  rep.metrics.push_back(band("max_delta_b_vs_quadrature", worst_db, 0.0, 1e-8));
  rep.metrics.push_back(band("max_delta_logtheta_vs_quadrature", worst_dlt, 0.0, 1e-8));

  const Constants c = closed_form_constants(p);
  rep.metrics.push_back(
      band("theta_exp_consistency", c.theta, std::exp(c.log_theta), 1e-15 * c.theta));
  if (std::abs(p.mass_ratio() - 0.5) < 1e-14) {
    rep.metrics.push_back(band("theta_equal_mass", c.theta, std::exp(-0.5), 1e-10));
    rep.metrics.push_back(band("b_equal_mass", c.b, 2.0 / 3.0, 1e-10));
    rep.metrics.push_back(band("sigma2_equal_mass", c.sigma2, 2.0 / (M_PI * M_PI), 1e-10));
    rep.metrics.push_back(band("eta_equal_mass", p.eta(), M_PI / 2.0, 1e-10));
  }
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_rate_function(const PhysParams& p) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "rate_function";
  const double a = p.mass_ratio();
  rep.sample_sizes = "a=" + std::to_string(a);

  const RateFunction rf(a);
  const Constants c = closed_form_constants(p);
  rep.metrics.push_back(band("lambda_at_zero", rf.lambda(0.0), 0.0, 0.0));
  const double h = 1e-5;
  rep.metrics.push_back(
      band("lambda_prime_zero_vs_logtheta", (rf.lambda(h) - rf.lambda(-h)) / (2.0 * h),
           c.log_theta, 1e-8));
  rep.metrics.push_back(band("rate_at_logtheta", rf.rate(c.log_theta), 0.0, 1e-8));

  // convexity of Lambda on a grid (second differences)
  double worst_second_diff = 0.0;
  const double lo = std::max(rf.xi_min() + 0.15, -6.0);
  for (double xi = lo; xi <= 6.0; xi += 0.1) {
    const double d2 = rf.lambda(xi + 0.1) - 2.0 * rf.lambda(xi) + rf.lambda(xi - 0.1);
    worst_second_diff = std::min(worst_second_diff, d2);
  }
  rep.metrics.push_back(band("lambda_min_second_difference", std::min(worst_second_diff, 0.0),
                             0.0, 1e-9));

  if (std::abs(a - 0.5) < 1e-14) {
    rep.metrics.push_back(band("rate_at_minus_one", rf.rate(-1.0), 1.0 - std::log(2.0), 1e-8));
  }
  // Legendre duality at a spot value
  const double x = c.log_theta - 0.2;
  if (const auto xi = rf.argmax_xi(x)) {
    const double recovered = (rf.lambda(*xi + h) - rf.lambda(*xi - h)) / (2.0 * h);
    rep.metrics.push_back(band("legendre_slope_recovery", recovered, x, 1e-8));
  }
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_martingale_covariance(const PhysParams& p, std::size_t n, std::uint64_t seed) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "martingale_covariance";
  rep.seed = seed;
  rep.sample_sizes = "chain=" + std::to_string(n);

  const double a = p.mass_ratio();
  const Constants c = closed_form_constants(p);
  const double b = c.b;
  const DirectionMomentCoeffs mom = direction_second_moment(a);

  RandomStream rng(seed);
  Vec3 y{1.0, 0.0, 0.0};
  Mat3 yy;
  for (std::size_t j = 0; j < n; ++j) {
    yy.add_outer(y);
    y = step_direction(a, y, rng);
  }
  // conditional covariance of Y'_j given Y_{j-1}, averaged along the chain:
  // (1/(1-b)^2)[(1+(1-b)^2)(iso I + aniso y y') - b^2 y y']
  const double inv = 1.0 / static_cast<double>(n);
  const double f = 1.0 + (1.0 - b) * (1.0 - b);
  const double scale = 1.0 / ((1.0 - b) * (1.0 - b));
  const double target = 2.0 / (3.0 * (1.0 - b));
  double frob2 = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) {
      const double mean_yy = yy.v[r][col] * inv;
      const double iso = (r == col) ? mom.iso : 0.0;
      const double est = scale * (f * (iso + mom.aniso * mean_yy) - b * b * mean_yy);
      const double tgt = (r == col) ? target : 0.0;
      frob2 += (est - tgt) * (est - tgt);
    }
  }
  const double rel = std::sqrt(frob2) / (target * std::sqrt(3.0));
  rep.metrics.push_back(band("frobenius_relative_error", rel, 0.0, 0.03));
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_clt(const PhysParams& p, std::size_t n, std::size_t ensemble, std::uint64_t seed,
                     unsigned threads) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "clt";
  rep.seed = seed;
  rep.sample_sizes = "n=" + std::to_string(n) + " ensemble=" + std::to_string(ensemble);

  const double a = p.mass_ratio();
  const Constants c = closed_form_constants(p);
  const double target_var = 2.0 / (3.0 * (1.0 - c.b));
  const std::array<double, 4> s_grid{0.25, 0.5, 0.75, 1.0};
  const MartingaleDecomposition dec(c.b);
  const double lindeberg_cut = 0.1 * std::sqrt(static_cast<double>(n));
  std::array<std::size_t, 4> marks;
  for (int g = 0; g < 4; ++g) {
    marks[g] = static_cast<std::size_t>(s_grid[g] * static_cast<double>(n) + 0.5);
  }

  std::vector<std::array<Vec3, 4>> sums(ensemble);
  std::vector<std::uint64_t> lindeberg_counts(ensemble, 0);
  parallel_for_index(ensemble, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    Vec3 y{1.0, 0.0, 0.0};
    CompensatedVec3 acc;
    std::size_t mark = 0;
    Vec3 y_prev = y;
    for (std::size_t j = 1; j <= n; ++j) {
      y_prev = y;
      y = step_direction(a, y, rng);
      const double lambda = rng.exponential();
      acc.add(lambda * y);
      if (dec.increment(y_prev, y, lambda).norm() >= lindeberg_cut) ++lindeberg_counts[i];
      while (mark < 4 && j == marks[mark]) {
        sums[i][mark] = acc.value() / std::sqrt(static_cast<double>(n));
        ++mark;
      }
    }
  });

  // per-component variance and mean at s = 1
  std::array<RunningStat, 3> comp;
  for (const auto& s : sums) {
    comp[0].add(s[3].x);
    comp[1].add(s[3].y);
    comp[2].add(s[3].z);
  }
  double worst_var = 0.0, worst_mean = 0.0;
  for (int ci = 0; ci < 3; ++ci) {
    worst_var = std::max(worst_var, std::abs(comp[ci].variance() / target_var - 1.0));
    worst_mean = std::max(worst_mean, std::abs(comp[ci].mean()) / (3.0 * comp[ci].std_error()));
  }
  rep.metrics.push_back(band("max_component_variance_rel_error", worst_var, 0.0, 0.05));
  rep.metrics.push_back(band("max_mean_in_3se_units", worst_mean, 0.0, 1.0));

  // off-diagonal correlations at s = 1
  auto column = [&](int comp_idx, int mark) {
    std::vector<double> v(ensemble);
    for (std::size_t i = 0; i < ensemble; ++i) {
      v[i] = (comp_idx == 0) ? sums[i][mark].x : (comp_idx == 1 ? sums[i][mark].y : sums[i][mark].z);
    }
    return v;
  };
  double worst_off = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int col = r + 1; col < 3; ++col) {
      worst_off = std::max(worst_off, std::abs(correlation(column(r, 3), column(col, 3))));
    }
  }
  rep.metrics.push_back(band("max_offdiagonal_correlation", worst_off, 0.0, 0.05));

  // KS normality per component at s = 1 against the fitted-variance Gaussian
  const double crit = ks_critical_one_sample(0.01, ensemble);
  double worst_ks = 0.0;
  for (int ci = 0; ci < 3; ++ci) {
    const double sd = comp[ci].stddev();
    worst_ks = std::max(
        worst_ks, ks_statistic(column(ci, 3), [&](double v) { return normal_cdf(v / sd); }));
  }
  rep.metrics.push_back(band("max_component_ks_vs_gaussian", worst_ks, 0.0, crit));

  // disjoint increments: (S(1)-S(0.75)) vs (S(0.5)-S(0.25))
  double worst_inc = 0.0;
  for (int ci = 0; ci < 3; ++ci) {
    std::vector<double> inc1(ensemble), inc2(ensemble);
    for (std::size_t i = 0; i < ensemble; ++i) {
      const Vec3 d1 = sums[i][3] - sums[i][2];
      const Vec3 d2 = sums[i][1] - sums[i][0];
      inc1[i] = d1[ci];
      inc2[i] = d2[ci];
    }
    worst_inc = std::max(worst_inc, std::abs(correlation(inc1, inc2)));
  }
  rep.metrics.push_back(band("max_disjoint_increment_correlation", worst_inc, 0.0, 0.05));

  std::uint64_t lindeberg_total = 0;
  for (const auto cnt : lindeberg_counts) lindeberg_total += cnt;
  const double lindeberg_frac =
      static_cast<double>(lindeberg_total) / (static_cast<double>(n) * static_cast<double>(ensemble));
  rep.metrics.push_back(band("lindeberg_exceedance_fraction", lindeberg_frac, 0.0, 1e-3));

  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_lln_jumpcount(const PhysParams& p, std::size_t n, double s0, std::size_t ensemble,
                               std::uint64_t seed, unsigned threads) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "lln_jumpcount";
  rep.seed = seed;
  rep.sample_sizes =
      "n=" + std::to_string(n) + " s0=" + std::to_string(s0) + " ensemble=" + std::to_string(ensemble);

  const Constants c = closed_form_constants(p);
  const double horizon = std::pow(c.theta, -static_cast<double>(n) * s0);
  if (!std::isfinite(horizon)) {
    throw ResourceLimitError("check_lln_jumpcount: theta^{-n s0} exceeds the time cap");
  }
  std::vector<double> s_grid;
  for (double s = 0.0; s <= s0 + 1e-12; s += 0.05) s_grid.push_back(std::min(s, s0));

  std::vector<double> sup_dev(ensemble), endpoint(ensemble);
  const double dn = static_cast<double>(n);
  std::vector<double> query_times(s_grid.size());
  for (std::size_t g = 0; g < s_grid.size(); ++g) {
    query_times[g] = std::pow(c.theta, -dn * s_grid[g]);
  }
  parallel_for_index(ensemble, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    Vec3 k{1.0, 0.0, 0.0};
    double clock = 0.0;
    std::size_t jumps = 0, grid_pos = 0;
    double sup = 0.0;
    while (grid_pos < s_grid.size()) {
      const double t_next = clock + rng.exponential() / scattering_rate(p, k);
      // jumps with T_j <= query: all `jumps` so far, since clock <= query < t_next
      // (a jump landing exactly on the query time counts)
      while (grid_pos < s_grid.size() && query_times[grid_pos] < t_next) {
        const double frac = static_cast<double>(jumps) / dn;
        sup = std::max(sup, std::abs(frac - s_grid[grid_pos]));
        if (grid_pos + 1 == s_grid.size()) endpoint[i] = frac;
        ++grid_pos;
      }
      clock = t_next;
      ++jumps;
      k = sample_jump(p, k, rng);
    }
    sup_dev[i] = sup;
  });

  rep.metrics.push_back(band("sup_deviation_90th_percentile", percentile(sup_dev, 90.0), 0.0, 0.2));
  rep.metrics.push_back(band("endpoint_median", median(endpoint), 1.0, 0.1));
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_ldp_tails(const PhysParams& p, std::size_t n, std::size_t ensemble,
                           std::uint64_t seed, std::optional<std::vector<double>> x_list) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "ldp_tails";
  rep.seed = seed;
  rep.sample_sizes = "n=" + std::to_string(n) + " ensemble=" + std::to_string(ensemble);

  const double a = p.mass_ratio();
  const Constants c = closed_form_constants(p);
  const RateFunction rf(a);
  const std::vector<double> xs =
      x_list ? *x_list : std::vector<double>{c.log_theta + 0.3, c.log_theta - 0.3};

  const double A = a * a + (1.0 - a) * (1.0 - a);
  const double B = 2.0 * a * (1.0 - a);
  const double lo_pow = A - B;  // (1-2a)^2

  RandomStream rng(seed);
  for (const double x : xs) {
    const bool upper = x >= c.log_theta;
    const auto xi_opt = rf.argmax_xi(x);
    if (!xi_opt) {
      throw DomainError("check_ldp_tails: x outside the attainable slope range");
    }
    const double xi = *xi_opt;
    const double log_norm = rf.lambda(xi);
    const double pw = 0.5 * xi + 1.0;  // exponent of the tilted CDF in (A+Bt)
    const double lo_p = std::pow(lo_pow, pw);
    const double hi_p = 1.0;  // (A+B)^pw = 1
    CompensatedSum weight_sum;
    std::size_t events = 0;
    const double threshold = x * static_cast<double>(n);
    for (std::size_t i = 0; i < ensemble; ++i) {
      CompensatedSum s_acc;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = rng.uniform01();
        // inverse CDF of the tilted cos-angle law, then D = log(A+Bt)/2
        const double u = std::pow(lo_p + v * (hi_p - lo_p), 1.0 / pw);
        s_acc.add(0.5 * std::log(u));
      }
      const double s = s_acc.value();
      const bool hit = upper ? (s >= threshold) : (s <= threshold);
      if (hit) {
        ++events;
        weight_sum.add(std::exp(-xi * s + static_cast<double>(n) * log_norm));
      }
    }
    if (events < 10) {
      throw InsufficientTailError("check_ldp_tails: fewer than 10 tail events at x=" +
                                  std::to_string(x));
    }
    const double prob = weight_sum.value() / static_cast<double>(ensemble);
    const double rate = -std::log(prob) / static_cast<double>(n);
    rep.metrics.push_back(band((upper ? "upper_rate_x=" : "lower_rate_x=") + std::to_string(x),
                               rate, rf.rate(x), 0.15));
  }
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_momentum_decay(const PhysParams& p, const Vec3& k0, std::size_t ensemble,
                                std::uint64_t seed, unsigned threads) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "momentum_decay";
  rep.seed = seed;
  rep.sample_sizes = "ensemble=" + std::to_string(ensemble);

  std::vector<double> t_grid, log_t;
  for (int i = 0; i < 10; ++i) {
    const double t = std::pow(10.0, 3.0 + 3.0 * i / 9.0);
    t_grid.push_back(t);
    log_t.push_back(std::log(t));
  }
  std::vector<double> slopes(ensemble);
  parallel_for_index(ensemble, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_trajectory(p, {0, 0, 0}, k0, t_grid.back(), rng);
    std::vector<double> log_k(t_grid.size());
    for (std::size_t g = 0; g < t_grid.size(); ++g) {
      log_k[g] = std::log(traj.momentum(t_grid[g]).norm());
    }
    slopes[i] = ols_slope(log_t, log_k);
  });
  rep.metrics.push_back(band("median_loglog_slope", median(slopes), -1.0, 0.1));

  // mean-field slope over the same grid, reported (not asserted)
  const MeanFieldState mf_like{p, {0, 0, 0}, k0};
  std::vector<double> log_k_mf(t_grid.size());
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    log_k_mf[g] = std::log(meanfield_momentum(mf_like, t_grid[g]).norm());
  }
  Metric info;
  info.label = "meanfield_slope_reported";
  info.estimate = ols_slope(log_t, log_k_mf);
  info.target = -1.0;
  info.tolerance = std::numeric_limits<double>::infinity();
  info.pass = true;
  rep.metrics.push_back(info);

  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_position_moments(const PhysParams& p, const Vec3& x0, const Vec3& k0,
                                  std::size_t ensemble, std::uint64_t seed, unsigned threads) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "position_moments";
  rep.seed = seed;
  rep.sample_sizes = "ensemble=" + std::to_string(ensemble);

  const std::vector<double> t_list{1e3, 1e4, 1e5, 1e6};
  const Constants c = closed_form_constants(p);
  const std::size_t nt = t_list.size();

  std::vector<std::vector<Vec3>> disp(ensemble, std::vector<Vec3>(nt));
  parallel_for_index(ensemble, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_trajectory(p, x0, k0, t_list.back(), rng);
    for (std::size_t g = 0; g < nt; ++g) disp[i][g] = traj.position(t_list[g]) - x0;
  });

  std::array<RunningStat, 3> final_comp;
  std::vector<RunningStat> abs_disp(nt);
  for (std::size_t i = 0; i < ensemble; ++i) {
    final_comp[0].add(disp[i][nt - 1].x);
    final_comp[1].add(disp[i][nt - 1].y);
    final_comp[2].add(disp[i][nt - 1].z);
    for (std::size_t g = 0; g < nt; ++g) abs_disp[g].add(disp[i][g].norm());
  }

  // bounded mean, part 1: the mean displacement is small on the scale of the
  // typical (diverging) displacement
  Vec3 mean_disp{final_comp[0].mean(), final_comp[1].mean(), final_comp[2].mean()};
  const double sd_scale =
      (final_comp[0].stddev() + final_comp[1].stddev() + final_comp[2].stddev()) / 3.0;
  rep.metrics.push_back(band("mean_displacement_over_sd", mean_disp.norm() / (4.0 * sd_scale),
                             0.0, 1.0));

  // bounded mean, part 2: the mean matches the finite analytic limit
  // pref * k0_hat / (1-b) within 4 standard errors per component
  const Vec3 analytic = p.position_prefactor() / (1.0 - c.b) * k0.normalized();
  for (int ci = 0; ci < 3; ++ci) {
    rep.metrics.push_back(band("mean_vs_analytic_limit_" + std::to_string(ci),
                               mean_disp[ci], analytic[ci], 4.0 * final_comp[ci].std_error()));
  }

  // divergent absolute mean: strictly increasing, sqrt(log t) growth
  double min_gap = std::numeric_limits<double>::infinity();
  std::vector<double> abs_means(nt), sqrt_log_t(nt);
  for (std::size_t g = 0; g < nt; ++g) {
    abs_means[g] = abs_disp[g].mean();
    sqrt_log_t[g] = std::sqrt(std::log(t_list[g]));
    if (g > 0) min_gap = std::min(min_gap, abs_means[g] - abs_means[g - 1]);
  }
  Metric inc;
  inc.label = "abs_mean_strictly_increasing_min_gap";
  inc.estimate = min_gap;
  inc.target = 0.0;
  inc.tolerance = std::numeric_limits<double>::infinity();
  inc.pass = min_gap > 0.0;
  rep.metrics.push_back(inc);
  const double corr = correlation(abs_means, sqrt_log_t);
  Metric cm;
  cm.label = "abs_mean_sqrtlog_correlation";
  cm.estimate = corr;
  cm.target = 1.0;
  cm.tolerance = 0.01;
  cm.pass = corr >= 0.99;
  rep.metrics.push_back(cm);
  // growth coefficient, reported
  Metric coeff;
  coeff.label = "sqrtlog_growth_coefficient_reported";
  coeff.estimate = ols_slope(sqrt_log_t, abs_means);
  coeff.target = 0.0;
  coeff.tolerance = std::numeric_limits<double>::infinity();
  coeff.pass = true;
  rep.metrics.push_back(coeff);

  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_brownian_limit(const PhysParams& p, std::size_t n, std::size_t ensemble,
                                std::uint64_t seed, unsigned threads) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "brownian_limit";
  rep.seed = seed;
  rep.sample_sizes = "n=" + std::to_string(n) + " ensemble=" + std::to_string(ensemble);

  const Constants c = closed_form_constants(p);
  const std::vector<double> s_grid{0.25, 0.5, 0.75, 1.0};
  const double horizon = std::pow(c.theta, -static_cast<double>(n));
  if (!std::isfinite(horizon)) {
    throw ResourceLimitError("check_brownian_limit: theta^{-n} exceeds the time cap");
  }
  const Vec3 x0{0.0, 0.0, 0.0};
  const Vec3 k0{1.0, 0.0, 0.0};

  std::vector<std::vector<Vec3>> w(ensemble, std::vector<Vec3>(s_grid.size()));
  parallel_for_index(ensemble, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_trajectory(p, x0, k0, horizon, rng);
    const auto path = rescaled_path(traj, n, c.theta, s_grid);
    for (std::size_t g = 0; g < s_grid.size(); ++g) w[i][g] = path[g];
  });

  double worst_var = 0.0;
  std::array<RunningStat, 3> final_comp;
  for (std::size_t g = 0; g < s_grid.size(); ++g) {
    std::array<RunningStat, 3> comp;
    for (std::size_t i = 0; i < ensemble; ++i) {
      comp[0].add(w[i][g].x);
      comp[1].add(w[i][g].y);
      comp[2].add(w[i][g].z);
    }
    const double target = c.sigma2 * s_grid[g];
    for (int ci = 0; ci < 3; ++ci) {
      worst_var = std::max(worst_var, std::abs(comp[ci].variance() / target - 1.0));
    }
    if (g + 1 == s_grid.size()) final_comp = comp;
  }
  rep.metrics.push_back(band("max_variance_rel_error", worst_var, 0.0, 0.15));

  auto column = [&](int ci, std::size_t g) {
    std::vector<double> v(ensemble);
    for (std::size_t i = 0; i < ensemble; ++i) v[i] = w[i][g][ci];
    return v;
  };
  double worst_inc = 0.0;
  for (int ci = 0; ci < 3; ++ci) {
    std::vector<double> inc1(ensemble), inc2(ensemble);
    for (std::size_t i = 0; i < ensemble; ++i) {
      inc1[i] = w[i][3][ci] - w[i][2][ci];
      inc2[i] = w[i][1][ci] - w[i][0][ci];
    }
    worst_inc = std::max(worst_inc, std::abs(correlation(inc1, inc2)));
  }
  rep.metrics.push_back(band("max_disjoint_increment_correlation", worst_inc, 0.0, 0.05));

  double worst_cross = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int col = r + 1; col < 3; ++col) {
      worst_cross = std::max(worst_cross, std::abs(correlation(column(r, 3), column(col, 3))));
    }
  }
  rep.metrics.push_back(band("max_cross_component_correlation", worst_cross, 0.0, 0.05));

  const double crit = ks_critical_one_sample(0.01, ensemble);
  double worst_ks = 0.0;
  for (int ci = 0; ci < 3; ++ci) {
    const double sd = final_comp[ci].stddev();
    const double mu = final_comp[ci].mean();
    worst_ks = std::max(worst_ks, ks_statistic(column(ci, 3), [&](double v) {
                          return normal_cdf((v - mu) / sd);
                        }));
  }
  rep.metrics.push_back(band("max_component_ks_vs_gaussian_s1", worst_ks, 0.0, crit));

  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

StatReport check_generator(const PhysParams& p, const Vec3& x0, const Vec3& k0, double dt,
                           std::size_t n_samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  StatReport rep;
  rep.name = "generator";
  rep.seed = seed;
  rep.sample_sizes = "dt=" + std::to_string(dt) + " n_samples=" + std::to_string(n_samples);

  // smooth compact-ish test function: Gaussian bump in (x, k)
  const Vec3 xc = x0 + Vec3{0.2, 0.0, 0.0};
  const Vec3 kc = 0.8 * k0 + Vec3{0.0, 0.1, 0.0};
  const double width = 0.7;
  const double inv_w2 = 1.0 / (width * width);
  auto f = [&](const Vec3& x, const Vec3& k) {
    return std::exp(-0.5 * inv_w2 * ((x - xc).norm2() + (k - kc).norm2()));
  };
  const double f0 = f(x0, k0);

  // Duhamel rate: (E f(X_dt, K_dt) - f(x,k))/dt by exact short simulation
  RunningStat lhs_stat;
  for (std::size_t i = 0; i < n_samples; ++i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_trajectory(p, x0, k0, dt, rng);
    lhs_stat.add(f(traj.position(dt), traj.momentum(dt)));
  }
  const double lhs = (lhs_stat.mean() - f0) / dt;
  const double se_lhs = lhs_stat.std_error() / dt;

  // generator: advection + collision
  const Vec3 grad_x = -inv_w2 * (x0 - xc) * f0;
  const double advection = grad_x.dot(k0) / p.m();
  RandomStream rng(seed ^ 0x9e3779b97f4a7c15ull);
  RunningStat gain;
  for (std::size_t i = 0; i < n_samples; ++i) {
    gain.add(f(x0, sample_jump(p, k0, rng)) - f0);
  }
  const double rate = scattering_rate(p, k0);
  const double rhs = advection + rate * gain.mean();
  const double se_rhs = rate * gain.std_error();

  // band: 3 combined standard errors plus an O(dt) bias allowance
  // (|L^2 f|/2 <= ~10 for this bump at these parameters)
  const double tol = 3.0 * std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs) + 10.0 * dt;
  rep.metrics.push_back(band("duhamel_rate_vs_generator", lhs, rhs, tol));
  rep.finish();
  rep.wall_time_ms = elapsed_ms(t0);
  return rep;
}

std::vector<std::string> check_names() {
  return {"constants", "rate_function", "kernel",   "drift",    "martingale_covariance",
          "clt",       "lln",           "ldp",      "momentum_decay", "position_moments",
          "brownian_limit", "generator"};
}

StatReport run_check(const std::string& name, const CheckConfig& cfg) {
  const auto n_or = [&](std::size_t dflt) {
    return cfg.n > 0 ? static_cast<std::size_t>(cfg.n) : dflt;
  };
  const auto ens_or = [&](std::size_t dflt) {
    return cfg.ensemble > 0 ? static_cast<std::size_t>(cfg.ensemble) : dflt;
  };
  if (name == "constants") return check_constants(cfg.params);
  if (name == "rate_function") return check_rate_function(cfg.params);
  if (name == "kernel") return check_kernel(cfg.params, n_or(1000000), ens_or(100000), cfg.seed);
  if (name == "drift") return check_drift(cfg.params, cfg.k0, n_or(1000000), cfg.seed);
  if (name == "martingale_covariance") {
    return check_martingale_covariance(cfg.params, n_or(1000000), cfg.seed);
  }
  if (name == "clt") return check_clt(cfg.params, n_or(10000), ens_or(10000), cfg.seed, cfg.threads);
  if (name == "lln") {
    return check_lln_jumpcount(cfg.params, n_or(200), 1.0, ens_or(200), cfg.seed, cfg.threads);
  }
  if (name == "ldp") return check_ldp_tails(cfg.params, n_or(50), ens_or(100000), cfg.seed);
  if (name == "momentum_decay") {
    return check_momentum_decay(cfg.params, cfg.k0, ens_or(200), cfg.seed, cfg.threads);
  }
  if (name == "position_moments") {
    return check_position_moments(cfg.params, cfg.x0, cfg.k0, ens_or(10000), cfg.seed, cfg.threads);
  }
  if (name == "brownian_limit") {
    return check_brownian_limit(cfg.params, n_or(40), ens_or(5000), cfg.seed, cfg.threads);
  }
  if (name == "generator") {
    return check_generator(cfg.params, cfg.x0, cfg.k0, 1e-3, n_or(1000000), cfg.seed);
  }
  throw DomainError("unknown check: " + name);
}

}  // namespace friction_walk
