// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <optional>

#include "friction_walk/kernel.hpp"

namespace friction_walk {

/// Closed-form limit constants of the process.
struct Constants {
  double a;          ///< mass ratio m/(m+M)
  double b;          ///< directional persistence E(Y_{n+1} . Y_n)
  double log_theta;  ///< mean log momentum contraction per jump, < 0
  double theta;      ///< exp(log_theta), in (0,1)
  double sigma2;     ///< diffusion variance of the rescaled position
};

/// Closed forms for b, log theta, theta, sigma^2 as functions of the masses.
/// The removable singularity at a = 1/2 is evaluated as its limit.
Constants closed_form_constants(const PhysParams& p);

/// Directional-persistence constant by 1-D quadrature:
/// (1/2) Int_{-1}^{1} (a+(1-a)t)/sqrt(a^2+(1-a)^2+2a(1-a)t) dt.
double b_by_quadrature(double a);

/// Mean log contraction by 1-D quadrature:
/// (1/4) Int_{-1}^{1} log(a^2+(1-a)^2+2a(1-a)t) dt,
/// with the a = 1/2 endpoint singularity removed by substitution.
double logtheta_by_quadrature(double a);

/// Log-moment generating function of the per-jump log contraction D_j,
/// closed form Lambda(xi) = log[(1-|1-2a|^{xi+2})/(2a(1-a)(xi+2))].
/// Domain: all xi for a != 1/2; xi > -1 for a = 1/2.
double lambda_mgf(double a, double xi);

/// Quadrature oracle for lambda_mgf (independent 1-D integral).
double lambda_mgf_by_quadrature(double a, double xi);

/// Lambda(xi), Lambda'(xi) and the Legendre transform I(x).
class RateFunction {
 public:
  explicit RateFunction(double a);

  double a() const { return a_; }
  /// Lower end of the supported xi-domain (-inf for a != 1/2, -1 for a = 1/2).
  double xi_min() const { return xi_min_; }

  double lambda(double xi) const;        ///< validates the public domain
  double lambda_prime(double xi) const;  ///< derivative of the closed form

  /// I(x) = sup_xi (x*xi - Lambda(xi)), solved by bisection on Lambda'.
  /// Returns +inf for x outside the closure of the attainable slope range.
  double rate(double x) const;

  /// The maximizing xi* with Lambda'(xi*) = x, when the supremum is attained
  /// on the domain closure.
  std::optional<double> argmax_xi(double x) const;

  static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

 private:
  double lambda_unchecked(double xi) const;

  double a_;
  double beta_;      ///< |1-2a|
  double xi_min_;    ///< public domain lower bound
  double slope_lo_;  ///< inf of attainable Lambda' (over the domain closure)
};

/// Convenience: I(x) for mass ratio a.
double rate_function(double a, double x);

}  // namespace friction_walk
