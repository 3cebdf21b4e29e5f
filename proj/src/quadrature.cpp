// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/quadrature.hpp"

#include <array>
#include <cmath>

namespace friction_walk {

namespace {

constexpr int kOrder = 15;

struct GaussRule {
  std::array<double, kOrder> node;
  std::array<double, kOrder> weight;
};

// Nodes of P_15 by Newton iteration on the Legendre recurrence.
GaussRule make_rule() {
  GaussRule r;
  const int n = kOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.node[i] = x;
    r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

double panel(const std::function<double(double)>& f, double lo, double hi) {
  const GaussRule& r = rule();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    acc += r.weight[i] * f(mid + half * r.node[i]);
  }
  return acc * half;
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double whole,
             double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel(f, lo, mid);
  const double right = panel(f, mid, hi);
  const double err = (left + right) - whole;
  if (std::abs(err) <= tol || depth <= 0) return left + right;
  return adapt(f, lo, mid, left, 0.5 * tol, depth - 1) +
         adapt(f, mid, hi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                 int max_depth) {
  return adapt(f, lo, hi, panel(f, lo, hi), abs_tol, max_depth);
}

}  // namespace friction_walk
