#include "lrs/stats.hpp"

#include "lrs/types.hpp"

#include <algorithm>
#include <cmath>

namespace lrs {

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw DimensionError("ks_two_sample: both samples must be nonempty");
  }
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const auto na = static_cast<double>(xs.size());
  const auto nb = static_cast<double>(ys.size());

  // Walk the merged order; ties advance both sides before the CDFs are compared.
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.critical = kKsCoefficient01 * std::sqrt((na + nb) / (na * nb));
  r.pass = d < r.critical;
  return r;
}

Histogram empirical_histogram(std::span<const std::int64_t> samples, double bin_width) {
  if (samples.empty() || !(bin_width > 0)) {
    throw ParameterError("empirical_histogram: need samples and a positive bin width");
  }
  Histogram h;
  const double unit = 1.0 / static_cast<double>(samples.size());
  for (std::int64_t x : samples) {
    h[static_cast<std::int64_t>(std::floor(static_cast<double>(x) / bin_width))] += unit;
  }
  return h;
}

Histogram rebin(const std::map<std::int64_t, double>& pmf, double bin_width) {
  if (!(bin_width > 0)) {
    throw ParameterError("rebin: bin width must be positive");
  }
  Histogram h;
  for (const auto& [x, p] : pmf) {
    h[static_cast<std::int64_t>(std::floor(static_cast<double>(x) / bin_width))] += p;
  }
  return h;
}

double total_variation(const Histogram& a, const Histogram& b) {
  double sum = 0;
  for (const auto& [k, p] : a) {
    const auto it = b.find(k);
    sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b) {
    if (!a.contains(k)) {
      sum += p;
    }
  }
  return sum / 2;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionError("linear_fit: need at least two paired points");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) {
    throw DimensionError("linear_fit: x values are all equal");
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace lrs
