#include "lrs/gaussian.hpp"

#include "lrs/modq.hpp"

#include <algorithm>
#include <cmath>

namespace lrs {

namespace {

constexpr std::int64_t kMaxBlocks = std::int64_t{1} << 16;

}  // namespace

GaussSampler::GaussSampler(double sigma, double tail_cut) : sigma_(sigma), tail_cut_(tail_cut) {
  if (!(sigma > 0) || !std::isfinite(sigma) || !(tail_cut > 0)) {
    throw ParameterError("GaussSampler: sigma and tail_cut must be positive and finite");
  }
  radius_ = static_cast<std::int64_t>(std::ceil(tail_cut * sigma));
  const std::int64_t span = 2 * radius_ + 1;
  block_width_ = (span + kMaxBlocks - 1) / kMaxBlocks;
  const std::int64_t blocks = (span + block_width_ - 1) / block_width_;

  // Pr[X > t] for the continuous Gaussian with the same sigma.
  const double scale = sigma * std::sqrt(2.0);
  auto upper_tail = [scale](double t) { return 0.5 * std::erfc(t / scale); };
  auto block_mass = [&](std::int64_t lo, std::int64_t hi) {
    if (block_width_ == 1) {
      return gaussian_weight(static_cast<double>(lo), sigma_);
    }
    const double a = static_cast<double>(lo) - 0.5;
    const double b = static_cast<double>(hi) + 0.5;
    if (a >= 0) {
      return upper_tail(a) - upper_tail(b);
    }
    if (b <= 0) {
      return upper_tail(-b) - upper_tail(-a);
    }
    return 1.0 - upper_tail(-a) - upper_tail(b);
  };

  cdf_.resize(static_cast<std::size_t>(blocks));
  double total = 0;
  for (std::int64_t i = 0; i < blocks; ++i) {
    const std::int64_t lo = -radius_ + i * block_width_;
    const std::int64_t hi = std::min(lo + block_width_ - 1, radius_);
    total += block_mass(lo, hi);
    cdf_[static_cast<std::size_t>(i)] = total;
  }
  for (auto& c : cdf_) {
    c /= total;
  }
  cdf_.back() = 1.0;
}

std::int64_t sample_z(const GaussSampler& s, RandomSource& rng) {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(s.cdf_.begin(), s.cdf_.end(), u);
  const auto block = static_cast<std::int64_t>(it - s.cdf_.begin());
  const std::int64_t lo = -s.radius_ + block * s.block_width_;
  if (s.block_width_ == 1) {
    return lo;
  }
  const std::int64_t hi = std::min(lo + s.block_width_ - 1, s.radius_);
  const std::int64_t nearest = lo > 0 ? lo : (hi < 0 ? hi : 0);
  const double peak = gaussian_weight(static_cast<double>(nearest), s.sigma_);
  for (;;) {
    const std::int64_t x = lo + static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    if (rng.uniform01() * peak < gaussian_weight(static_cast<double>(x), s.sigma_)) {
      return x;
    }
  }
}

IntVector sample_vec(const GaussSampler& s, Eigen::Index m, RandomSource& rng) {
  if (m < 1) {
    throw DimensionError("sample_vec: length must be positive");
  }
  IntVector out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out(i) = sample_z(s, rng);
  }
  return out;
}

std::int64_t sample_z_centered(double center, double sigma, RandomSource& rng, double tail_cut) {
  if (!(sigma > 0) || !std::isfinite(center)) {
    throw ParameterError("sample_z_centered: invalid center or sigma");
  }
  const auto lo = static_cast<std::int64_t>(std::ceil(center - tail_cut * sigma));
  const auto hi = static_cast<std::int64_t>(std::floor(center + tail_cut * sigma));
  const auto width = static_cast<std::uint64_t>(hi - lo + 1);
  for (;;) {
    const std::int64_t x = lo + static_cast<std::int64_t>(rng.uniform_below(width));
    if (rng.uniform01() < gaussian_weight(static_cast<double>(x) - center, sigma)) {
      return x;
    }
  }
}

double accept_probability(const IntVector& z, const IntVector& v, double sigma, double M) {
  if (z.size() != v.size()) {
    throw DimensionError("accept_probability: length mismatch");
  }
  if (!(sigma > 0) || !std::isfinite(sigma) || !(M >= 1) || !std::isfinite(M)) {
    throw ParameterError("accept_probability: sigma must be positive and M >= 1");
  }
  const wide_int v2 = norms(v).l2_squared;
  const wide_int zv = inner_product(z, v);
  const long double exponent = static_cast<long double>(v2 - 2 * zv) / (2.0L * sigma * sigma);
  if (!std::isfinite(static_cast<double>(exponent))) {
    throw ParameterError("accept_probability: non-finite exponent (sigma misconfigured?)");
  }
  if (exponent >= std::log(static_cast<long double>(M))) {
    return 1.0;
  }
  return static_cast<double>(std::exp(exponent) / M);
}

bool rejection_step(const IntVector& candidate, const IntVector& center, const GaussSampler& s, double M,
                    RandomSource& rng) {
  const double p = accept_probability(candidate, center, s.sigma(), M);
  return rng.uniform01() < p;
}

}  // namespace lrs
