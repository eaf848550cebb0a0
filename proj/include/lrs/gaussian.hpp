#pragma once

// Discrete Gaussian over Z and Z^m, and the rejection-sampling acceptance rule.

#include "lrs/random.hpp"
#include "lrs/types.hpp"

#include <memory>
#include <vector>

namespace lrs {

/// rho_sigma(x) = exp(-x^2 / (2 sigma^2)).
inline double gaussian_weight(double x, double sigma) { return std::exp(-(x * x) / (2.0 * sigma * sigma)); }

/// Center-0 discrete Gaussian D_sigma truncated to [-ceil(tail_cut*sigma), ceil(tail_cut*sigma)].
///
/// Inverse-CDF sampler over at most 2^16 blocks of consecutive integers. With
/// width-1 blocks the table holds the exact normalized rho weights. Wider blocks
/// (sigma above roughly 2700) take their mass from the Gaussian CDF at
/// half-integer boundaries, and the integer within a block is chosen by
/// rejection on rho, so the in-block shape is exact.
///
/// Immutable after construction; the randomness is supplied per call.
class GaussSampler {
 public:
  GaussSampler(double sigma, double tail_cut);

  double sigma() const { return sigma_; }
  double tail_cut() const { return tail_cut_; }
  std::int64_t radius() const { return radius_; }
  std::int64_t block_width() const { return block_width_; }
  std::size_t block_count() const { return cdf_.size(); }

  /// Cumulative block weights, nondecreasing and ending at exactly 1.
  const std::vector<double>& cdf_table() const { return cdf_; }

 private:
  friend std::int64_t sample_z(const GaussSampler&, RandomSource&);

  double sigma_;
  double tail_cut_;
  std::int64_t radius_;
  std::int64_t block_width_;
  std::vector<double> cdf_;
};

std::int64_t sample_z(const GaussSampler& s, RandomSource& rng);

/// m independent draws of sample_z.
IntVector sample_vec(const GaussSampler& s, Eigen::Index m, RandomSource& rng);

/// Integer from D_{Z, center, sigma} for an arbitrary real center, by rejection
/// from the uniform window center +- tail_cut*sigma. Used for randomized rounding.
std::int64_t sample_z_centered(double center, double sigma, RandomSource& rng, double tail_cut = 12.0);

/// min(D_sigma^m(z) / (M * D_{v,sigma}^m(z)), 1)
///   = min(exp((||v||^2 - 2<z,v>) / (2 sigma^2)) / M, 1),
/// from exact integer ||v||^2 and <z,v> followed by a single exponentiation.
double accept_probability(const IntVector& z, const IntVector& v, double sigma, double M);

/// One rejection decision for candidate = center + D_sigma^m sample; consumes one uniform.
bool rejection_step(const IntVector& candidate, const IntVector& center, const GaussSampler& s, double M,
                    RandomSource& rng);

}  // namespace lrs
