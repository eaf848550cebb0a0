#include "lrs/ringsig.hpp"

#include <openssl/crypto.h>

#include <fmt/format.h>

#include <cmath>
#include <numeric>

namespace lrs {

namespace {

void put_u32(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_residues(Bytes& out, const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put_u32(out, static_cast<std::uint64_t>(m(i, j)));
    }
  }
}

void check_shape(const RingPublic& ring, const RingSignature& sig) {
  const auto& p = ring.params();
  if (sig.responses.size() != ring.size()) {
    throw DimensionError(fmt::format("signature has {} responses for a ring of {}", sig.responses.size(), ring.size()));
  }
  for (const auto& z : sig.responses) {
    if (z.size() != p.m) {
      throw DimensionError("signature response length differs from m");
    }
  }
  if (sig.challenge.coeffs.size() != p.k) {
    throw DimensionError("signature challenge length differs from k");
  }
}

}  // namespace

RingPublic::RingPublic(ParameterSet params, ModMatrix target, std::vector<ModMatrix> members)
    : params_(std::move(params)), target_(std::move(target)), members_(std::move(members)) {
  if (members_.empty()) {
    throw DimensionError("ring must have at least one member");
  }
  if (target_.rows() != params_.n || target_.cols() != params_.k || target_.modulus() != params_.q) {
    throw DimensionError("ring target must be n x k over Z_q");
  }
  for (const auto& a : members_) {
    if (a.rows() != params_.n || a.cols() != params_.m || a.modulus() != params_.q) {
      throw DimensionError("ring member key must be n x m over Z_q");
    }
  }
  digest_ = ring_digest(params_, target_, members_);
  sampler_ = std::make_shared<const GaussSampler>(params_.sigma, params_.tail_cut);
}

SecretKey::~SecretKey() {
  if (s_.size() > 0) {
    OPENSSL_cleanse(s_.data(), static_cast<std::size_t>(s_.size()) * sizeof(std::int64_t));
  }
}

bool RingSignature::operator==(const RingSignature& other) const {
  if (responses.size() != other.responses.size() || !(challenge == other.challenge)) {
    return false;
  }
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (responses[i].size() != other.responses[i].size() || responses[i] != other.responses[i]) {
      return false;
    }
  }
  return true;
}

RingDigest ring_digest(const ParameterSet& params, const ModMatrix& target, std::span<const ModMatrix> members) {
  Bytes buf{'L', 'R', 'S', '1', '-', 'r', 'i', 'n', 'g'};
  for (std::int64_t v : {params.n, params.q, params.w, params.m, params.k, params.kappa, params.d,
                         static_cast<std::int64_t>(members.size())}) {
    put_u32(buf, static_cast<std::uint64_t>(v));
  }
  put_residues(buf, target.residues());
  for (const auto& a : members) {
    put_residues(buf, a.residues());
  }
  const Bytes h = shake256(buf, 32);
  RingDigest out{};
  std::copy(h.begin(), h.end(), out.begin());
  return out;
}

Challenge expand_challenge(RandomSource& source, std::int64_t k, std::int64_t kappa) {
  if (kappa < 0 || kappa > k) {
    throw ParameterError("expand_challenge: need 0 <= kappa <= k");
  }
  std::vector<std::int64_t> positions(static_cast<std::size_t>(k));
  std::iota(positions.begin(), positions.end(), 0);
  for (std::int64_t i = 0; i < kappa; ++i) {
    const auto j = i + static_cast<std::int64_t>(source.uniform_below(static_cast<std::uint64_t>(k - i)));
    std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(j)]);
  }
  Challenge c{IntVector::Zero(k)};
  std::uint64_t signs = 0;
  for (std::int64_t i = 0; i < kappa; ++i) {
    if (i % 64 == 0) {
      signs = source.next_u64();
    }
    c.coeffs(positions[static_cast<std::size_t>(i)]) = (signs & 1) ? -1 : 1;
    signs >>= 1;
  }
  return c;
}

Challenge hash_challenge(const IntVector& w, ByteView ring_digest, ByteView msg, std::int64_t k, std::int64_t kappa) {
  Bytes input{'L', 'R', 'S', '1', '-', 'c', 'h', 'a', 'l'};
  put_u32(input, static_cast<std::uint64_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    put_u32(input, static_cast<std::uint64_t>(w(i)));
  }
  input.insert(input.end(), ring_digest.begin(), ring_digest.end());
  put_u32(input, msg.size());
  input.insert(input.end(), msg.begin(), msg.end());
  XofStream xof(std::move(input));
  return expand_challenge(xof, k, kappa);
}

ChallengeOracle hash_oracle(const ParameterSet& params) {
  return [k = params.k, kappa = params.kappa](const IntVector& w, ByteView digest, ByteView msg) {
    return hash_challenge(w, digest, msg, k, kappa);
  };
}

SecretKey secret_key_from_trapdoor(const TrapdoorKeypair& kp, const ModMatrix& target, RandomSource& rng) {
  const auto& p = kp.params;
  const PreimageSampler sampler(kp, p.sigma_pre);
  IntMatrix s(p.m, p.k);
  for (std::int64_t j = 0; j < p.k; ++j) {
    IntVector col;
    do {
      col = sampler.sample(target.col(j), rng);
    } while (norms(col).linf > p.d);
    s.col(j) = col;
  }
  return SecretKey(std::move(s));
}

RingKeys ring_keygen(const ParameterSet& params, std::size_t ring_size, RandomSource& rng,
                     std::vector<SecretKey>* alternates) {
  if (ring_size < 1) {
    throw ParameterError("ring_keygen: ring size must be at least 1");
  }
  IntMatrix t(params.n, params.k);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      t(i, j) = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(params.q)));
    }
  }
  const ModMatrix target = ModMatrix::reduce(t, params.q);
  std::vector<ModMatrix> members;
  std::vector<SecretKey> keys;
  if (alternates != nullptr) {
    alternates->clear();
  }
  for (std::size_t i = 0; i < ring_size; ++i) {
    const TrapdoorKeypair kp = trap_gen(params, rng);
    keys.push_back(secret_key_from_trapdoor(kp, target, rng));
    if (alternates != nullptr) {
      alternates->push_back(secret_key_from_trapdoor(kp, target, rng));
    }
    members.push_back(kp.A);
  }
  return RingKeys{RingPublic(params, target, std::move(members)), std::move(keys)};
}

IntVector ring_commitment(const RingPublic& ring, std::span<const IntVector> masks) {
  const std::int64_t q = ring.params().q;
  IntVector acc = IntVector::Zero(ring.params().n);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    acc += mat_vec_mod(ring.members()[i], masks[i]);
  }
  return acc.unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
}

IntVector ring_commitment(const RingPublic& ring, std::span<const IntVector> responses, const Challenge& c) {
  const std::int64_t q = ring.params().q;
  const IntVector az = ring_commitment(ring, responses);
  const IntVector tc = mat_vec_mod(ring.target(), c.coeffs);
  return (az - tc).unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
}

bool responses_within_bound(const ParameterSet& params, std::span<const IntVector> responses) {
  const wide_int bound = norm_bound_squared(params);
  // Any entry beyond the l2 radius already fails; rejecting it first keeps the
  // squared sum of decoded (possibly hostile) entries inside 128 bits.
  const auto radius = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<long double>(bound))));
  for (const auto& z : responses) {
    if ((z.array() > radius).any() || (z.array() < -radius).any()) {
      return false;
    }
    if (norms(z).l2_squared > bound) {
      return false;
    }
  }
  return true;
}

RingSignature sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer, RandomSource& rng,
                   SignTrace* trace, const SignOptions& options) {
  const auto& p = ring.params();
  if (signer >= ring.size()) {
    throw DimensionError(fmt::format("signer index {} outside ring of {}", signer, ring.size()));
  }
  if (key.matrix().rows() != p.m || key.matrix().cols() != p.k) {
    throw DimensionError("secret key must be m x k");
  }
  const GaussSampler& sampler = ring.sampler();
  std::vector<IntVector> masks(ring.size());
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    for (auto& y : masks) {
      y = sample_vec(sampler, p.m, rng);
    }
    const IntVector w = ring_commitment(ring, masks);
    Challenge c = hash_challenge(w, ring.digest(), msg, p.k, p.kappa);
    const IntVector shift = key.matrix() * c.coeffs;
    std::vector<IntVector> responses = masks;
    responses[signer] = shift + masks[signer];
    if (!rejection_step(responses[signer], shift, sampler, p.M, rng)) {
      continue;
    }
    if (!responses_within_bound(p, responses)) {
      continue;
    }
    if (trace != nullptr) {
      trace->attempts = attempt;
      trace->masks = masks;
      trace->commitment = w;
    }
    return RingSignature{std::move(responses), std::move(c)};
  }
  throw RetryBudgetExhausted(fmt::format("sign: no acceptance within {} attempts", options.max_attempts));
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::none:
      return "none";
    case RejectReason::norm:
      return "norm";
    case RejectReason::challenge:
      return "challenge";
  }
  return "unknown";
}

VerifyResult verify(ByteView msg, const RingPublic& ring, const RingSignature& sig, const ChallengeOracle& oracle) {
  check_shape(ring, sig);
  if (!responses_within_bound(ring.params(), sig.responses)) {
    return {false, RejectReason::norm};
  }
  const IntVector w = ring_commitment(ring, sig.responses, sig.challenge);
  if (!(oracle(w, ring.digest(), msg) == sig.challenge)) {
    return {false, RejectReason::challenge};
  }
  return {true, RejectReason::none};
}

VerifyResult verify(ByteView msg, const RingPublic& ring, const RingSignature& sig) {
  return verify(msg, ring, sig, hash_oracle(ring.params()));
}

}  // namespace lrs
