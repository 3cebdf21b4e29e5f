// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace friction_walk {

/// Streaming mean/variance (Welford).
class RunningStat {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const;
  double std_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double normal_cdf(double z);

/// One-sample KS statistic of `data` against the given CDF. Sorts a copy.
double ks_statistic(std::vector<double> data, const std::function<double(double)>& cdf);

/// Two-sample KS statistic. Sorts copies.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic one-sample critical value c(alpha)/sqrt(n).
double ks_critical_one_sample(double alpha, std::size_t n);

/// Asymptotic two-sample critical value c(alpha)*sqrt((n+m)/(n m)).
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

/// Least-squares slope of y against x. Throws InsufficientDataError for
/// fewer than two distinct points.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson correlation coefficient.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

/// Linear-interpolation percentile, q in [0, 100]. Sorts a copy.
double percentile(std::vector<double> data, double q);

double median(std::vector<double> data);

/// H_k = sum_{i=1}^{k} 1/i.
double harmonic_number(std::size_t k);

}  // namespace friction_walk
