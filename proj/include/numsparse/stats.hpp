#pragma once

#include <span>
#include <vector>

namespace numsparse {

/// Standard normal CDF.
double normal_cdf(double z);

/// z_p with Phi(z_p) = p. p = 0 and p = 1 map to -inf and +inf.
double normal_quantile(double p);

double sample_mean(std::span<const double> v);

/// Unbiased sample variance; NaN for fewer than two values.
double sample_variance(std::span<const double> v);

/// One-sample Kolmogorov-Smirnov statistic against the exact N(0,1) CDF.
double ks_statistic_normal(std::span<const double> v);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic_two_sample(std::span<const double> a, std::span<const double> b);

/// Kendall tau-a between paired sequences.
double kendall_tau(std::span<const double> a, std::span<const double> b);

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<long> counts;
};

/// Histogram with Freedman-Diaconis bin width.
Histogram freedman_diaconis_histogram(std::span<const double> v);

}  // namespace numsparse
