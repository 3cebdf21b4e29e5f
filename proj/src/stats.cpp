// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/stats.hpp"

#include <algorithm>
#include <cmath>

#include "friction_walk/errors.hpp"

namespace friction_walk {

double RunningStat::stddev() const { return std::sqrt(variance()); }

double RunningStat::std_error() const {
  return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double ks_statistic(std::vector<double> data, const std::function<double(double)>& cdf) {
  std::sort(data.begin(), data.end());
  const double n = static_cast<double>(data.size());
  double d = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

namespace {
// inverse of the Kolmogorov tail alpha = 2 sum (-1)^{k-1} exp(-2 k^2 c^2),
// dominated by the first term at the levels used here
double ks_scaling(double alpha) { return std::sqrt(-0.5 * std::log(0.5 * alpha)); }
}  // namespace

double ks_critical_one_sample(double alpha, std::size_t n) {
  return ks_scaling(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return ks_scaling(alpha) * std::sqrt((nn + mm) / (nn * mm));
}

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("ols_slope: need at least two points");
  }
  RunningStat sx;
  for (const double v : x) sx.add(v);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - sx.mean()) * (x[i] - sx.mean());
    sxy += (x[i] - sx.mean()) * y[i];
  }
  if (sxx == 0.0) throw InsufficientDataError("ols_slope: degenerate abscissa");
  return sxy / sxx;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("correlation: need at least two points");
  }
  RunningStat sx, sy;
  for (const double v : x) sx.add(v);
  for (const double v : y) sy.add(v);
  double cov = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - sx.mean()) * (y[i] - sy.mean());
  }
  cov /= static_cast<double>(x.size() - 1);
  return cov / (sx.stddev() * sy.stddev());
}

double percentile(std::vector<double> data, double q) {
  if (data.empty()) throw InsufficientDataError("percentile: empty sample");
  std::sort(data.begin(), data.end());
  const double pos = q / 100.0 * static_cast<double>(data.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= data.size()) return data.back();
  const double frac = pos - static_cast<double>(lo);
  return data[lo] * (1.0 - frac) + data[lo + 1] * frac;
}

double median(std::vector<double> data) { return percentile(std::move(data), 50.0); }

double harmonic_number(std::size_t k) {
  double h = 0.0;
  for (std::size_t i = k; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

}  // namespace friction_walk
