#pragma once

// Ring key generation with a shared target T, Fiat-Shamir-with-aborts ring
// signing, and verification.

#include "lrs/gaussian.hpp"
#include "lrs/modq.hpp"
#include "lrs/params.hpp"
#include "lrs/random.hpp"
#include "lrs/trapdoor.hpp"

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace lrs {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using RingDigest = std::array<std::uint8_t, 32>;

inline ByteView as_bytes(std::string_view s) { return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}; }

/// Sparse ternary challenge of length k.
struct Challenge {
  IntVector coeffs;

  std::int64_t weight() const { return coeffs.cwiseAbs().sum(); }
  bool operator==(const Challenge& other) const {
    return coeffs.size() == other.coeffs.size() && coeffs == other.coeffs;
  }
};

/// Public view of a ring: parameters, shared target T (n x k), and member keys
/// A_1..A_l (n x m each), with the canonical ring digest and the signing
/// sampler precomputed.
class RingPublic {
 public:
  RingPublic(ParameterSet params, ModMatrix target, std::vector<ModMatrix> members);

  const ParameterSet& params() const { return params_; }
  const ModMatrix& target() const { return target_; }
  const std::vector<ModMatrix>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const RingDigest& digest() const { return digest_; }
  const GaussSampler& sampler() const { return *sampler_; }

 private:
  ParameterSet params_;
  ModMatrix target_;
  std::vector<ModMatrix> members_;
  RingDigest digest_{};
  std::shared_ptr<const GaussSampler> sampler_;
};

/// Secret key S (m x k, entries in [-d, d]); wiped on destruction.
class SecretKey {
 public:
  SecretKey() = default;
  explicit SecretKey(IntMatrix s) : s_(std::move(s)) {}
  SecretKey(const SecretKey&) = default;
  SecretKey(SecretKey&&) noexcept = default;
  SecretKey& operator=(const SecretKey&) = default;
  SecretKey& operator=(SecretKey&&) noexcept = default;
  ~SecretKey();

  const IntMatrix& matrix() const { return s_; }

 private:
  IntMatrix s_;
};

struct RingKeys {
  RingPublic ring;
  std::vector<SecretKey> secret_keys;
};

struct RingSignature {
  std::vector<IntVector> responses;  // z_1..z_l, each of length m
  Challenge challenge;

  bool operator==(const RingSignature& other) const;
};

/// Canonical digest of (params, T, A_1..A_l): SHAKE-256 over the little-endian
/// encoding, member order preserved.
RingDigest ring_digest(const ParameterSet& params, const ModMatrix& target, std::span<const ModMatrix> members);

/// Uniform weight-kappa ternary vector of length k drawn from `source`
/// (partial Fisher-Yates over positions, then one sign bit per position).
Challenge expand_challenge(RandomSource& source, std::int64_t k, std::int64_t kappa);

/// H(w, L, msg): SHAKE-256 over a domain tag, w as u32 residues, the ring
/// digest and the raw message, expanded by expand_challenge.
Challenge hash_challenge(const IntVector& w, ByteView ring_digest, ByteView msg, std::int64_t k, std::int64_t kappa);

using ChallengeOracle = std::function<Challenge(const IntVector& w, ByteView ring_digest, ByteView msg)>;

/// The real random oracle for a ring's parameters.
ChallengeOracle hash_oracle(const ParameterSet& params);

/// Secret key for one member: k preimages of T's columns under the member's trapdoor.
SecretKey secret_key_from_trapdoor(const TrapdoorKeypair& kp, const ModMatrix& target, RandomSource& rng);

/// Uniform T, then per member trap_gen and k preimages of T's columns. When
/// `alternates` is non-null, a second independent key for each member is drawn
/// from the same trapdoor (A_i S'_i = T too); the harness's extraction needs it.
RingKeys ring_keygen(const ParameterSet& params, std::size_t ring_size, RandomSource& rng,
                     std::vector<SecretKey>* alternates = nullptr);

/// sum_i A_i z_i - T c mod q.
IntVector ring_commitment(const RingPublic& ring, std::span<const IntVector> responses, const Challenge& c);

/// sum_i A_i y_i mod q.
IntVector ring_commitment(const RingPublic& ring, std::span<const IntVector> masks);

/// Internals of a signing run, for tests and the security harness.
struct SignTrace {
  std::size_t attempts = 0;
  std::vector<IntVector> masks;  // y_i of the accepted attempt
  IntVector commitment;          // sum_i A_i y_i of the accepted attempt
};

struct SignOptions {
  std::size_t max_attempts = 1000;
};

/// Ring signature by member `signer` holding `key`. Restarts from fresh y_i for
/// every member whenever the rejection step or a norm check fails.
RingSignature sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer, RandomSource& rng,
                   SignTrace* trace = nullptr, const SignOptions& options = {});

enum class RejectReason { none, norm, challenge };

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::none;
  explicit operator bool() const { return accepted; }
};

std::string_view to_string(RejectReason reason);

/// Throws DimensionError when the signature's shape does not match the ring.
VerifyResult verify(ByteView msg, const RingPublic& ring, const RingSignature& sig);
VerifyResult verify(ByteView msg, const RingPublic& ring, const RingSignature& sig, const ChallengeOracle& oracle);

/// True when every ||z_i||^2 <= ceil((2 sigma sqrt(m))^2).
bool responses_within_bound(const ParameterSet& params, std::span<const IntVector> responses);

}  // namespace lrs
