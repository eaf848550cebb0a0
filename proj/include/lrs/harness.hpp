#pragma once

// Executable security analysis: programmable random oracle, the two hybrid
// signers, the anonymity experiment, the collision census, brute-force SIS,
// and the witness extraction arithmetic.

#include "lrs/ringsig.hpp"
#include "lrs/stats.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrs {

/// Random oracle with programmable points. Unprogrammed inputs fall back to
/// hash_challenge and are remembered, so a later attempt to program them is
/// detected. Programming an input that is already set overwrites it (the hybrid
/// does not check) and counts one collision event.
class ProgrammableOracle {
 public:
  explicit ProgrammableOracle(const ParameterSet& params) : k_(params.k), kappa_(params.kappa) {}

  Challenge query(const IntVector& w, ByteView ring_digest, ByteView msg);
  void program(const IntVector& w, ByteView ring_digest, ByteView msg, const Challenge& c);
  bool is_set(const IntVector& w, ByteView ring_digest, ByteView msg) const;

  std::size_t collisions() const { return collisions_; }
  std::size_t programmed() const { return programmed_; }

  /// Adapter for verify(); the oracle must outlive it.
  ChallengeOracle as_challenge_oracle();

 private:
  static Bytes key(const IntVector& w, ByteView ring_digest, ByteView msg);

  std::int64_t k_;
  std::int64_t kappa_;
  std::map<Bytes, Challenge> table_;
  std::size_t collisions_ = 0;
  std::size_t programmed_ = 0;
};

enum class TranscriptSource { real, hybrid1, hybrid2 };

struct TranscriptSample {
  RingSignature signature;
  std::size_t restarts = 0;  // attempts including the emitted one
  TranscriptSource source = TranscriptSource::real;
};

/// Real signing wrapped as a transcript.
TranscriptSample real_sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                           RandomSource& rng);

/// Signing with c drawn uniformly instead of hashed; the oracle is programmed at
/// sum_i A_i z_i - T c afterwards.
TranscriptSample hybrid1_sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                              ProgrammableOracle& oracle, RandomSource& rng, const SignOptions& options = {});

/// Signing without any secret key: uniform c, every z_i raw Gaussian, emitted
/// with probability 1/M, oracle programmed so the output verifies.
TranscriptSample hybrid2_sign(ByteView msg, const RingPublic& ring, ProgrammableOracle& oracle, RandomSource& rng,
                              const SignOptions& options = {});

/// Fraction of rejection steps that accept, over `trials` fresh (y, c) draws by `signer`.
double rejection_acceptance_rate(const RingPublic& ring, const SecretKey& key, std::size_t trials, RandomSource& rng);

/// Fraction of hybrid2 attempts that emit, over `trials` attempts.
double hybrid2_emission_rate(const RingPublic& ring, std::size_t trials, RandomSource& rng);

struct NamedKs {
  std::string name;
  KsResult result;
};

struct AnonymityReport {
  std::vector<NamedKs> tests;
  bool pass = false;
};

enum class SignerMode {
  correct,
  no_rejection,  // negative control: z_j = S_j c + y_j returned unconditionally
};

/// Signature by `signer`, optionally with the rejection step disabled.
RingSignature sign_with_mode(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                             RandomSource& rng, SignerMode mode);

/// N signatures from i0 and N from i1 on identical messages. KS tests across
/// the two arms on: pooled normalized coordinates of z_{i0} and of z_{i1}; the
/// squared norm of every z_i; and the projections <z_i, S_i c> / ||S_i c|| for
/// i0 and i1, which carry any leak of the secret shift.
AnonymityReport anonymity_experiment(const RingKeys& keys, std::size_t i0, std::size_t i1, std::size_t samples,
                                     RandomSource& rng, SignerMode mode = SignerMode::correct);

/// KS tests between two transcript populations: pooled coordinates, squared
/// norm per member, and the signed position sum of c.
AnonymityReport compare_transcripts(const RingPublic& ring, std::span<const TranscriptSample> a,
                                    std::span<const TranscriptSample> b);

struct CensusResult {
  std::uint64_t unique = 0;
  std::uint64_t total = 0;
  double bound = 0;  // q^n / (2d+1)^m
  bool holds = false;
};

/// Enumerates {-d..d}^m, buckets by A s mod q, counts singleton buckets.
/// Throws EnumerationTooLarge when (2d+1)^m > 1e7.
CensusResult collision_census(const ModMatrix& a, std::int64_t d);

/// First nonzero v in lexicographic order over [-radius, radius]^m with
/// A v = 0 mod q and ||v|| <= beta. Throws EnumerationTooLarge when
/// (2 radius + 1)^m > 1e7.
std::optional<IntVector> sis_bruteforce(const ModMatrix& a, double beta, std::int64_t radius);

struct ExtractionResult {
  IntVector v;  // length m * l
  bool in_kernel = false;
  bool bound_ok = false;
  bool nonzero = false;
  bool forks_verified = false;
};

/// Forking with known keys: two accepted signatures by `signer` on `msg` that
/// share every y_i but carry distinct programmed challenges c != c'. Then
/// v = [z'_i - z_i]_i with S'_j (c' - c) subtracted from block j, where S'_j is a
/// second key of the signer (A_j S'_j = T). A v = 0 follows from
/// sum_i A_i (z'_i - z_i) = T (c' - c) = A_j S'_j (c' - c).
ExtractionResult extract_sis_witness(const RingKeys& keys, std::span<const SecretKey> alternates, ByteView msg,
                                     std::size_t signer, RandomSource& rng);

/// Exact per-coordinate marginals of D_{Lambda_y(A), sigma} restricted to
/// [-radius, radius]^m (sigma a standard deviation), by dynamic programming over
/// the q^n syndromes. Requires q^n <= 4096.
std::vector<std::map<std::int64_t, double>> coset_marginals_exact(const ModMatrix& a, const IntVector& y, double sigma,
                                                                  std::int64_t radius);

/// Ordered key=value results plus an overall verdict.
class Report {
 public:
  void add(std::string key, std::string value);
  void add_check(const std::string& key, bool pass);
  bool pass() const { return pass_; }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string text() const;
  std::string json() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  bool pass_ = true;
};

struct SelftestOptions {
  std::size_t ring_size = 4;
  std::size_t roundtrips = 50;
  std::size_t rejection_trials = 20000;
  std::size_t anonymity_samples = 1000;
  std::size_t extraction_trials = 100;
};

/// Reduced-size run of every harness suite on one preset.
Report run_selftest(const ParameterSet& params, std::uint64_t seed, const SelftestOptions& options = {});

}  // namespace lrs
