// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/constants.hpp"

#include <cmath>

#include "friction_walk/errors.hpp"
#include "friction_walk/quadrature.hpp"

namespace friction_walk {

namespace {

void require_mass_ratio(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("mass ratio a must lie in (0,1)");
}

double closed_form_b(double a) {
  const double beta = std::abs(1.0 - 2.0 * a);
  return 0.5 * (beta * (2.0 * a * a + a - 1.0) - 3.0 * a + 1.0) / (3.0 * (a - 1.0) * a * a);
}

double closed_form_log_theta(double a) {
  const double beta = std::abs(1.0 - 2.0 * a);
  // (1-2a)^2 log|1-2a| has a removable zero at a = 1/2.
  if (beta < 1e-8) return -0.5;
  return 0.5 * (beta * beta * std::log(beta) / (2.0 * (a - 1.0) * a) - 1.0);
}

}  // namespace

Constants closed_form_constants(const PhysParams& p) {
  const double a = p.mass_ratio();
  const double m = p.m();
  const double M = p.M();
  Constants c;
  c.a = a;
  c.b = closed_form_b(a);
  c.log_theta = closed_form_log_theta(a);
  c.theta = std::exp(c.log_theta);
  const double total = m + M;
  const double t2 = total * total;
  c.sigma2 = 2.0 / (3.0 * (1.0 - c.b)) * t2 * t2 / (16.0 * M_PI * M_PI * (m * m * m * m) * (M * M * M * M));
  return c;
}

double b_by_quadrature(double a) {
  require_mass_ratio(a);
  const double A = a * a + (1.0 - a) * (1.0 - a);
  const double B = 2.0 * a * (1.0 - a);
  return 0.5 * integrate(
                   [&](double t) { return (a + (1.0 - a) * t) / std::sqrt(A + B * t); }, -1.0,
                   1.0, 1e-11);
}

double logtheta_by_quadrature(double a) {
  require_mass_ratio(a);
  const double A = a * a + (1.0 - a) * (1.0 - a);
  const double B = 2.0 * a * (1.0 - a);
  if (A - B < 1e-12 * A) {
    // a = 1/2: the integrand is log(2B(1+t)/2); substitute (1+t)/2 = w^2 so
    // the singular endpoint becomes the continuous w*log(w) profile.
    return integrate([&](double w) { return w * std::log(2.0 * B * w * w); }, 0.0, 1.0, 1e-11);
  }
  return 0.25 * integrate([&](double t) { return std::log(A + B * t); }, -1.0, 1.0, 1e-11);
}

double lambda_mgf_by_quadrature(double a, double xi) {
  require_mass_ratio(a);
  const double A = a * a + (1.0 - a) * (1.0 - a);
  const double B = 2.0 * a * (1.0 - a);
  if (A - B < 1e-12 * A) {
    if (!(xi > -1.0)) throw DomainError("lambda_mgf: xi must exceed -1 at a = 1/2");
    // substitute (1+t)/2 = w^2
    const double scale = std::pow(2.0 * B, 0.5 * xi);
    return std::log(2.0 * scale *
                    integrate([&](double w) { return std::pow(w, xi + 1.0); }, 0.0, 1.0, 1e-12));
  }
  return std::log(
      0.5 * integrate([&](double t) { return std::pow(A + B * t, 0.5 * xi); }, -1.0, 1.0, 1e-12));
}

RateFunction::RateFunction(double a) : a_(a) {
  require_mass_ratio(a);
  beta_ = std::abs(1.0 - 2.0 * a);
  if (beta_ < 1e-15) {
    xi_min_ = -1.0;  // Lambda diverges at xi = -2 and below -1 the closed
                     // form needs the principal branch; domain cut at -1
    slope_lo_ = lambda_prime(-1.0);
  } else {
    xi_min_ = -std::numeric_limits<double>::infinity();
    slope_lo_ = std::log(beta_);  // limit of Lambda' as xi -> -inf
  }
}

double RateFunction::lambda_unchecked(double xi) const {
  const double x = xi + 2.0;
  const double denom = 2.0 * a_ * (1.0 - a_);
  if (beta_ < 1e-15) return std::log(1.0 / (denom * x));
  const double L = std::log(beta_);
  if (std::abs(x) < 1e-8) {
    // (1 - beta^x)/x -> -log(beta) as x -> 0
    return std::log(-L * (1.0 + 0.5 * x * L + x * x * L * L / 6.0)) - std::log(denom);
  }
  if (x * L > 700.0) {
    // beta^x would overflow; (1-beta^x)/x ~ beta^x/|x| here
    return x * L - std::log(denom * std::abs(x));
  }
  return std::log((1.0 - std::pow(beta_, x)) / (denom * x));
}

double RateFunction::lambda(double xi) const {
  if (xi < xi_min_) throw DomainError("lambda: xi below the supported domain");
  return lambda_unchecked(xi);
}

double RateFunction::lambda_prime(double xi) const {
  if (xi < xi_min_) throw DomainError("lambda_prime: xi below the supported domain");
  const double x = xi + 2.0;
  if (beta_ < 1e-15) return -1.0 / x;
  const double L = std::log(beta_);
  if (std::abs(x) < 1e-6) {
    const double u = 0.5 * x * L + x * x * L * L / 6.0;
    const double du = 0.5 * L + x * L * L / 3.0;
    return du / (1.0 + u);
  }
  // -beta^x L/(1-beta^x) rewritten as L/(1-beta^{-x}); stays finite when
  // beta^x overflows (large negative x).
  return L / (1.0 - std::exp(-x * L)) - 1.0 / x;
}

std::optional<double> RateFunction::argmax_xi(double x) const {
  if (x >= 0.0 || x < slope_lo_) return std::nullopt;
  if (x == slope_lo_) {
    // attained only at the a = 1/2 domain boundary xi = -1
    if (beta_ < 1e-15) return xi_min_;
    return std::nullopt;
  }
  // Bracket the solution of Lambda'(xi) = x on the strictly increasing slope.
  double lo = (beta_ < 1e-15) ? xi_min_ : -1.0;
  double hi = 1.0;
  int guard = 0;
  while (lambda_prime(lo) > x) {
    lo = 2.0 * lo - 1.0;
    if (++guard > 200 || lo < -1e12) return std::nullopt;
  }
  guard = 0;
  while (lambda_prime(hi) < x) {
    hi = 2.0 * hi + 1.0;
    if (++guard > 200 || hi > 1e12) return std::nullopt;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lambda_prime(mid) < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double RateFunction::rate(double x) const {
  const auto xi_star = argmax_xi(x);
  if (!xi_star) return infinity();
  return std::max(x * *xi_star - lambda_unchecked(*xi_star), 0.0);
}

double lambda_mgf(double a, double xi) { return RateFunction(a).lambda(xi); }

double rate_function(double a, double x) { return RateFunction(a).rate(x); }

}  // namespace friction_walk
