#pragma once

// Small statistics toolkit for the harness: two-sample KS, total variation
// between histograms, and least-squares line fits.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace lrs {

/// c(alpha) for alpha = 0.01 in the two-sample KS critical value.
inline constexpr double kKsCoefficient01 = 1.628;

struct KsResult {
  double statistic = 0;
  double critical = 0;
  bool pass = false;
};

/// Two-sample Kolmogorov-Smirnov test at significance 0.01.
/// Critical value 1.628 * sqrt((nA + nB) / (nA * nB)). Throws on empty input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Probability mass function over integer bins.
using Histogram = std::map<std::int64_t, double>;

/// Normalized histogram of floor(x / bin_width).
Histogram empirical_histogram(std::span<const std::int64_t> samples, double bin_width);

/// Re-bins an exact pmf on integers into floor(x / bin_width) buckets.
Histogram rebin(const std::map<std::int64_t, double>& pmf, double bin_width);

/// Half the l1 distance between two pmfs (missing keys count as zero).
double total_variation(const Histogram& a, const Histogram& b);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares y ~ slope * x + intercept. Needs at least two distinct x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace lrs
