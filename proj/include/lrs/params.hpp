#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lrs {

/// Every integer and real parameter of the scheme. `l` (ring size) is per ring,
/// not part of this set.
struct ParameterSet {
  std::int64_t n = 0;      // lattice dimension
  std::int64_t q = 0;      // odd prime modulus
  std::int64_t w = 0;      // gadget width, ceil(log2 q)
  std::int64_t m = 0;      // public-matrix columns, 6*n*w
  std::int64_t k = 0;      // challenge length / columns of T
  std::int64_t kappa = 0;  // challenge weight
  std::int64_t d = 0;      // infinity bound on secret-key entries
  double sigma = 0;        // signing Gaussian standard deviation
  double M = 0;            // rejection-sampling constant
  double sigma_pre = 0;    // preimage-sampling Gaussian parameter
  double tail_cut = 0;     // sampler truncation radius, in multiples of sigma

  /// Uniform columns of the trapdoor matrix, m - n*w.
  std::int64_t m_bar() const { return m - n * w; }

  bool operator==(const ParameterSet&) const = default;
};

/// Gadget-lattice sampling width: sqrt(5) (Gram-Schmidt bound) times tail factor 6.
double gadget_sigma();

/// Standard deviation of the randomized rounding inside preimage sampling.
double rounding_sigma();

/// A-priori spectral bound on the ternary trapdoor R: sqrt(m_bar) + sqrt(n*w).
double trapdoor_spectral_bound(std::int64_t n, std::int64_t w);

bool is_prime(std::int64_t x);

/// ceil(log2 x) for x >= 2.
std::int64_t ceil_log2(std::int64_t x);

/// log2(2^kappa * C(k, kappa)), the bit size of the challenge set.
double challenge_space_bits(std::int64_t k, std::int64_t kappa);

/// Instantiates the scheme for (n, q, k, kappa). Pure and deterministic.
/// Throws ParameterError on a composite q, kappa > k, or overflow.
ParameterSet derive_params(std::int64_t n, std::int64_t q, std::int64_t k, std::int64_t kappa);

enum class Strictness {
  relaxed,  // toy/desk: challenge-space size not enforced
  secure,   // additionally require 2^kappa * C(k, kappa) >= 2^100
};

/// Every violated invariant, by name. Empty when valid.
std::vector<std::string> validate(const ParameterSet& p, Strictness strictness = Strictness::relaxed);

/// Named presets: "toy", "desk", "paper".
ParameterSet preset(std::string_view name);
std::vector<std::string> preset_names();

/// One `name=value` line per field, sorted by name.
std::string canonical_text(const ParameterSet& p);

/// Squared verification radius ceil((2*sigma*sqrt(m))^2), exact.
__int128 norm_bound_squared(const ParameterSet& p);

}  // namespace lrs
