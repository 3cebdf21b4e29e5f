// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cmath>

#include "friction_walk/analysis.hpp"
#include "friction_walk/constants.hpp"
#include "friction_walk/errors.hpp"
#include "friction_walk/random.hpp"
#include "friction_walk/stats.hpp"

using namespace friction_walk;

namespace {

Vec3 next_direction(double a, const Vec3& y, RandomStream& rng) {
  return (a * y + (1.0 - a) * rng.unit_sphere()).normalized();
}

}  // namespace

TEST_CASE("conditional second moment closed form vs monte carlo") {
  // E(Y'^alpha Y'^beta | y) = iso delta + aniso y^alpha y^beta
  const double a = 0.3;
  const DirectionMomentCoeffs mom = direction_second_moment(a);
  const Vec3 y{0.0, 0.0, 1.0};
  RandomStream rng(101);
  std::array<std::array<RunningStat, 3>, 3> mc;
  for (int i = 0; i < 1000000; ++i) {
    const Vec3 yn = next_direction(a, y, rng);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) mc[r][c].add(yn[r] * yn[c]);
    }
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double target = (r == c ? mom.iso : 0.0) + mom.aniso * y[r] * y[c];
      CHECK(std::abs(mc[r][c].mean() - target) <= 3.0 * mc[r][c].std_error() + 1e-12);
    }
  }
}

TEST_CASE("direction moment coefficients at equal masses") {
  const DirectionMomentCoeffs mom = direction_second_moment(0.5);
  // c2 = 1/2 at a = 1/2
  CHECK(mom.iso == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(mom.aniso == doctest::Approx(0.25).epsilon(1e-10));
  // trace is always 1
  for (const double a : {0.15, 0.4, 0.7}) {
    const DirectionMomentCoeffs m2 = direction_second_moment(a);
    CHECK(3.0 * m2.iso + m2.aniso == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("martingale increments are conditionally centered") {
  // binned by the previous direction's z-component, each bin mean within 3 se
  const double a = 0.5;
  const Constants c = closed_form_constants(PhysParams(1.0, 1.0));
  const MartingaleDecomposition dec(c.b);
  RandomStream rng(103);
  Vec3 y{1.0, 0.0, 0.0};
  std::array<std::array<RunningStat, 3>, 3> bins;  // bin x component
  for (int j = 0; j < 500000; ++j) {
    const Vec3 y_prev = y;
    y = next_direction(a, y, rng);
    const double lambda = rng.exponential();
    const Vec3 inc = dec.increment(y_prev, y, lambda);
    const int bin = y_prev.z < -1.0 / 3.0 ? 0 : (y_prev.z < 1.0 / 3.0 ? 1 : 2);
    bins[bin][0].add(inc.x);
    bins[bin][1].add(inc.y);
    bins[bin][2].add(inc.z);
  }
  for (int bin = 0; bin < 3; ++bin) {
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(std::abs(bins[bin][comp].mean()) <= 3.5 * bins[bin][comp].std_error());
    }
  }
}

TEST_CASE("martingale decomposition algebra") {
  const MartingaleDecomposition dec(2.0 / 3.0);
  CHECK(dec.coeff() == doctest::Approx(2.0).epsilon(1e-14));
  const Vec3 y{0.0, 1.0, 0.0};
  const Vec3 inc = dec.increment(y, y, 1.5);
  // h(y, lambda) - Ph(y) with equal directions collapses to lambda * y
  CHECK((inc - 1.5 * y).norm() <= 1e-14);
  CHECK(dec.increment_bound(1.5) == doctest::Approx(1.5 + 4.0).epsilon(1e-14));
}

TEST_CASE("stationarized covariance chain also converges") {
  // starting the direction chain from a uniform draw leaves the time-averaged
  // conditional covariance on target as well
  const double a = 0.5;
  const Constants c = closed_form_constants(PhysParams(1.0, 1.0));
  const DirectionMomentCoeffs mom = direction_second_moment(a);
  const double b = c.b;
  RandomStream rng(107);
  Vec3 y = rng.unit_sphere();
  std::array<std::array<RunningStat, 3>, 3> yy;
  for (int j = 0; j < 400000; ++j) {
    for (int r = 0; r < 3; ++r) {
      for (int col = 0; col < 3; ++col) yy[r][col].add(y[r] * y[col]);
    }
    y = next_direction(a, y, rng);
  }
  const double f = 1.0 + (1.0 - b) * (1.0 - b);
  const double scale = 1.0 / ((1.0 - b) * (1.0 - b));
  const double target = 2.0 / (3.0 * (1.0 - b));
  for (int r = 0; r < 3; ++r) {
    for (int col = 0; col < 3; ++col) {
      const double iso = (r == col) ? mom.iso : 0.0;
      const double est = scale * (f * (iso + mom.aniso * yy[r][col].mean()) -
                                  b * b * yy[r][col].mean());
      const double tgt = (r == col) ? target : 0.0;
      CHECK(std::abs(est - tgt) <= 0.03 * target);
    }
  }
}

TEST_CASE("expected maximum of exponentials is the harmonic number") {
  const std::size_t k = 1000;
  RandomStream rng(109);
  RunningStat mx;
  for (int rep = 0; rep < 1000; ++rep) {
    double m = 0.0;
    for (std::size_t i = 0; i < k; ++i) m = std::max(m, rng.exponential());
    mx.add(m);
  }
  CHECK(std::abs(mx.mean() - harmonic_number(k)) <= 0.05 * harmonic_number(k));
}

TEST_CASE("ldp rate vanishes at the typical slope") {
  const PhysParams p(1.0, 1.0);
  const Constants c = closed_form_constants(p);
  const StatReport rep =
      check_ldp_tails(p, 50, 20000, 113, std::vector<double>{c.log_theta});
  CHECK(rep.pass);
  CHECK(std::abs(rep.metrics[0].estimate) <= 0.05);
}

TEST_CASE("stat report aggregation") {
  StatReport rep;
  rep.name = "x";
  rep.metrics.push_back({"good", 0.0, 0.0, 1.0, true});
  rep.finish();
  CHECK(rep.pass);
  rep.metrics.push_back({"bad", 2.0, 0.0, 1.0, false});
  rep.finish();
  CHECK_FALSE(rep.pass);
}

TEST_CASE("check registry") {
  CHECK(check_names().size() == 12);
  CheckConfig cfg;
  CHECK_THROWS_AS(run_check("nope", cfg), DomainError);
  // a fast real entry through the registry
  const StatReport rep = run_check("constants", cfg);
  CHECK(rep.name == "constants");
  CHECK(rep.pass);
}

TEST_CASE("stats utilities") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ols_slope({0, 1, 2}, {1, 3, 5}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(ols_slope({1.0}, {2.0}), InsufficientDataError);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(percentile({0.0, 1.0}, 90.0) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(correlation({0, 1, 2, 3}, {0, 2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  // KS of exact uniform quantiles is small; of shifted data it is large
  std::vector<double> u;
  for (int i = 0; i < 1000; ++i) u.push_back((i + 0.5) / 1000.0);
  CHECK(ks_statistic(u, [](double v) { return v; }) <= ks_critical_one_sample(0.01, 1000));
  CHECK(ks_statistic(u, [](double v) { return v * v; }) > ks_critical_one_sample(0.01, 1000));
  CHECK(harmonic_number(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-14));
}
