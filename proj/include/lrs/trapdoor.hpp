#pragma once

// Gadget trapdoor: A = [A_bar | G - A_bar*R] with a short ternary R, and
// discrete-Gaussian preimage sampling for arbitrary syndromes.
//
// Width parameters in this module (sigma_g, sigma_pre) are Gaussian parameters
// s with rho_s(x) = exp(-pi x^2 / s^2), i.e. standard deviation s / sqrt(2 pi).

#include "lrs/modq.hpp"
#include "lrs/params.hpp"
#include "lrs/random.hpp"

#include <functional>
#include <map>
#include <memory>

namespace lrs {

/// Standard deviation of a Gaussian with parameter s.
double parameter_to_stddev(double s);

/// G = I_n (x) (1, 2, ..., 2^(w-1)); never materialized.
class GadgetMatrix {
 public:
  GadgetMatrix(std::int64_t n, std::int64_t w, std::int64_t q);

  std::int64_t n() const { return n_; }
  std::int64_t w() const { return w_; }
  std::int64_t q() const { return q_; }

  /// G*x mod q for x of length n*w.
  IntVector apply(const IntVector& x) const;

  /// Base-2 digits of each entry of t (reduced mod q); G * decompose(t) = t mod q.
  IntVector decompose(const IntVector& t) const;

  /// Short basis of the w-dimensional lattice {x : <g, x> = 0 mod q}, as columns.
  const IntMatrix& block_basis() const { return basis_; }

  /// Gram-Schmidt lengths of block_basis(), in column order.
  const RealVector& gram_schmidt_norms() const { return gs_norms_; }

  ModMatrix dense() const;

 private:
  friend IntVector gadget_preimage(const GadgetMatrix&, const IntVector&, double,
                                   const std::function<std::int64_t(double, double)>&);

  std::int64_t n_, w_, q_;
  IntMatrix basis_;
  RealMatrix gs_;  // Gram-Schmidt vectors as columns
  RealVector gs_norms_;
};

/// Rounding oracle for nearest-plane steps: (center, stddev) -> integer.
using IntegerRounder = std::function<std::int64_t(double center, double stddev)>;

/// z with G*z = t mod q, distributed as a discrete Gaussian with parameter sigma_g
/// over the solution coset (randomized nearest plane per w-block).
IntVector gadget_preimage(const GadgetMatrix& g, const IntVector& t, double sigma_g, const IntegerRounder& round);
IntVector gadget_preimage(const GadgetMatrix& g, const IntVector& t, double sigma_g, RandomSource& rng);

struct TrapdoorKeypair {
  ModMatrix A;  // n x m
  IntMatrix R;  // m_bar x n*w, entries in {-1, 0, 1}
  ParameterSet params;
};

/// Fresh keypair. A_bar uniform, R entries -1/0/+1 with probabilities 1/4, 1/2, 1/4.
/// R is redrawn in the rare case params.sigma_pre would not be admissible for it.
TrapdoorKeypair trap_gen(const ParameterSet& params, RandomSource& rng);

/// Largest singular value of R, by power iteration on R^T R.
double largest_singular_value(const IntMatrix& r, int iterations = 500);

/// Smallest admissible preimage parameter for this keypair: sigma_g * sqrt(1 + s1(R)^2).
double min_preimage_parameter(const TrapdoorKeypair& kp);

/// Repeated preimage sampling for one keypair. Factorizes the perturbation
/// covariance once.
class PreimageSampler {
 public:
  /// Throws ParameterError when sigma_pre is below the keypair's minimum.
  PreimageSampler(const TrapdoorKeypair& kp, double sigma_pre);

  /// e with A*e = y mod q and ||e|| <= sigma_pre*sqrt(m).
  IntVector sample(const IntVector& y, RandomSource& rng) const;

  /// Continuous perturbation, before rounding: covariance
  /// (s_pre^2 - s_g^2 B B^T) / (2 pi) - r^2 I with B = [R; I].
  RealVector continuous_perturbation(RandomSource& rng) const;

  /// Explicit square root of the continuous perturbation covariance (for tests).
  RealMatrix covariance_sqrt() const;

  /// The covariance the square root should reproduce (for tests).
  RealMatrix target_covariance() const;

  double sigma_pre() const { return sigma_pre_; }

 private:
  TrapdoorKeypair kp_;
  double sigma_pre_;
  GadgetMatrix gadget_;
  double base_;          // a = sqrt(std_pre^2 - r^2)
  RealMatrix basis_;     // U, m x n*w, orthonormal columns
  RealVector shrink_;    // per-direction sqrt(a^2 - std_g^2 lambda_i) - a
};

IntVector sample_pre(const TrapdoorKeypair& kp, double sigma_pre, const IntVector& y, RandomSource& rng);

/// Exact distribution of D_{Lambda_y(A), sigma} restricted to ||e||_inf <= radius,
/// by enumeration. Weights are exp(-||e||^2 / (2 sigma^2)) (sigma a standard
/// deviation), normalized. Requires (2 radius + 1)^m <= 1e7.
std::map<std::vector<std::int64_t>, double> sample_coset_bruteforce(const ModMatrix& a, const IntVector& y, double sigma,
                                                                    std::int64_t radius);

}  // namespace lrs
