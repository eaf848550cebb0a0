#include "lrs/ringsig.hpp"
#include "lrs/stats.hpp"

#include <doctest.h>

#include <fmt/format.h>

#include <map>

using namespace lrs;

namespace {

const RingKeys& desk_ring() {
  static const RingKeys keys = [] {
    ChaChaStream rng(1001);
    return ring_keygen(preset("desk"), 4, rng);
  }();
  return keys;
}

}  // namespace

TEST_CASE("keygen: every member key maps to the shared target") {
  const RingKeys& keys = desk_ring();
  const auto& p = keys.ring.params();
  REQUIRE(keys.secret_keys.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const IntMatrix& s = keys.secret_keys[i].matrix();
    CHECK(mat_mul_mod(keys.ring.members()[i], s) == keys.ring.target());
    CHECK(s.cwiseAbs().maxCoeff() <= p.d);
  }
}

TEST_CASE("keygen: one-member ring and seed determinism") {
  const ParameterSet p = preset("toy");
  ChaChaStream a(5), b(5);
  const RingKeys ka = ring_keygen(p, 1, a);
  const RingKeys kb = ring_keygen(p, 1, b);
  CHECK(ka.ring.size() == 1);
  CHECK(ka.ring.target() == kb.ring.target());
  CHECK(ka.ring.members()[0] == kb.ring.members()[0]);
  CHECK(ka.secret_keys[0].matrix() == kb.secret_keys[0].matrix());
  CHECK(ka.ring.digest() == kb.ring.digest());
  ChaChaStream rng(6);
  const std::string msg = "solo";
  const RingSignature sig = sign(as_bytes(msg), ka.ring, ka.secret_keys[0], 0, rng);
  CHECK(verify(as_bytes(msg), ka.ring, sig).accepted);
  CHECK_THROWS_AS(ring_keygen(p, 0, rng), ParameterError);
}

TEST_CASE("alternate keys come from the same trapdoor and differ") {
  const ParameterSet p = preset("toy");
  ChaChaStream rng(7);
  std::vector<SecretKey> alt;
  const RingKeys keys = ring_keygen(p, 3, rng, &alt);
  REQUIRE(alt.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(mat_mul_mod(keys.ring.members()[i], alt[i].matrix()) == keys.ring.target());
    CHECK(alt[i].matrix() != keys.secret_keys[i].matrix());
  }
}

TEST_CASE("ring digest depends on member order") {
  const RingKeys& keys = desk_ring();
  std::vector<ModMatrix> swapped = keys.ring.members();
  std::swap(swapped[0], swapped[1]);
  const RingPublic other(keys.ring.params(), keys.ring.target(), swapped);
  CHECK(other.digest() != keys.ring.digest());
}

TEST_CASE("hash_challenge is deterministic with exactly kappa nonzeros") {
  const auto& p = desk_ring().ring.params();
  const auto& digest = desk_ring().ring.digest();
  ChaChaStream rng(3);
  for (int t = 0; t < 200; ++t) {
    IntVector w(p.n);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::int64_t(rng.uniform_below(p.q));
    const std::string msg = fmt::format("m{}", t);
    const Challenge a = hash_challenge(w, digest, as_bytes(msg), p.k, p.kappa);
    const Challenge b = hash_challenge(w, digest, as_bytes(msg), p.k, p.kappa);
    CHECK(a == b);
    CHECK(a.weight() == p.kappa);
    CHECK((a.coeffs.array() != 0).count() == p.kappa);
    CHECK(a.coeffs.cwiseAbs().maxCoeff() == 1);
  }
}

TEST_CASE("flipping one message bit changes the challenge") {
  const auto& p = desk_ring().ring.params();
  const auto& digest = desk_ring().ring.digest();
  ChaChaStream rng(4);
  int changed = 0;
  for (int t = 0; t < 1000; ++t) {
    Bytes msg(16);
    for (auto& b : msg) b = static_cast<std::uint8_t>(rng.next_u64());
    IntVector w = IntVector::Zero(p.n);
    const Challenge a = hash_challenge(w, digest, msg, p.k, p.kappa);
    msg[rng.uniform_below(16)] ^= static_cast<std::uint8_t>(1u << rng.uniform_below(8));
    changed += hash_challenge(w, digest, msg, p.k, p.kappa) == a ? 0 : 1;
  }
  CHECK(changed >= 990);
}

TEST_CASE("expanded challenges are uniform over the challenge set") {
  // k = 4, kappa = 1: eight equally likely vectors.
  ChaChaStream rng(17);
  std::map<std::pair<Eigen::Index, std::int64_t>, int> counts;
  const int n = 80000;
  for (int i = 0; i < n; ++i) {
    const Challenge c = expand_challenge(rng, 4, 1);
    Eigen::Index pos = 0;
    c.coeffs.cwiseAbs().maxCoeff(&pos);
    ++counts[{pos, c.coeffs(pos)}];
  }
  REQUIRE(counts.size() == 8);
  double chi = 0;
  for (const auto& [key, c] : counts) chi += (c - n / 8.0) * (c - n / 8.0) / (n / 8.0);
  CHECK(chi < 18.475);  // 7 degrees of freedom at 0.01
  CHECK_THROWS_AS(expand_challenge(rng, 4, 5), ParameterError);
}

TEST_CASE("sign/verify roundtrip with the algebraic identity and non-signer transparency") {
  const RingKeys& keys = desk_ring();
  ChaChaStream rng(20);
  for (int t = 0; t < 100; ++t) {
    const std::size_t j = t % 4;
    const std::string msg = fmt::format("message {}", t);
    SignTrace trace;
    const RingSignature sig = sign(as_bytes(msg), keys.ring, keys.secret_keys[j], j, rng, &trace);
    CHECK(verify(as_bytes(msg), keys.ring, sig).accepted);
    CHECK(ring_commitment(keys.ring, sig.responses, sig.challenge) == trace.commitment);
    CHECK(ring_commitment(keys.ring, trace.masks) == trace.commitment);
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != j) CHECK(sig.responses[i] == trace.masks[i]);
    }
    CHECK(sig.responses[j] == trace.masks[j] + keys.secret_keys[j].matrix() * sig.challenge.coeffs);
  }
}

TEST_CASE("mean attempts per signature is M") {
  ChaChaStream rng(21);
  const RingKeys keys = ring_keygen(preset("desk"), 2, rng);
  const double M = keys.ring.params().M;
  std::size_t total = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    SignTrace trace;
    const std::string msg = fmt::format("{}", t);
    (void)sign(as_bytes(msg), keys.ring, keys.secret_keys[1], 1, rng, &trace);
    total += trace.attempts;
  }
  const double mean = double(total) / n;
  CHECK(mean >= M - 0.3);
  CHECK(mean <= M + 0.3);
}

TEST_CASE("signer responses follow the unshifted Gaussian") {
  const RingKeys& keys = desk_ring();
  const double sigma = keys.ring.params().sigma;
  ChaChaStream rng(22);
  std::vector<double> signer, raw;
  for (int t = 0; t < 300; ++t) {
    const std::string msg = fmt::format("{}", t);
    const RingSignature sig = sign(as_bytes(msg), keys.ring, keys.secret_keys[2], 2, rng);
    for (Eigen::Index i = 0; i < sig.responses[2].size(); ++i) signer.push_back(double(sig.responses[2](i)) / sigma);
  }
  for (std::size_t i = 0; i < signer.size(); ++i) raw.push_back(double(sample_z(keys.ring.sampler(), rng)) / sigma);
  CHECK(ks_two_sample(signer, raw).pass);
}

TEST_CASE("verify reports norm and challenge failures, and throws on shape") {
  const RingKeys& keys = desk_ring();
  const auto& p = keys.ring.params();
  ChaChaStream rng(23);
  const std::string msg = "reason codes";
  const RingSignature sig = sign(as_bytes(msg), keys.ring, keys.secret_keys[0], 0, rng);

  RingSignature big = sig;
  big.responses[3](5) = static_cast<std::int64_t>(3 * p.sigma * std::sqrt(double(p.m)) * 2);
  CHECK(verify(as_bytes(msg), keys.ring, big).reason == RejectReason::norm);

  RingSignature huge = sig;
  huge.responses[0](0) = INT64_MIN;
  CHECK(verify(as_bytes(msg), keys.ring, huge).reason == RejectReason::norm);

  const std::string other = "reason codez";
  const VerifyResult r = verify(as_bytes(other), keys.ring, sig);
  CHECK_FALSE(r.accepted);
  CHECK(r.reason == RejectReason::challenge);

  RingSignature short_sig = sig;
  short_sig.responses.pop_back();
  CHECK_THROWS_AS(verify(as_bytes(msg), keys.ring, short_sig), DimensionError);
  RingSignature bad_c = sig;
  bad_c.challenge.coeffs = IntVector::Zero(p.k + 1);
  CHECK_THROWS_AS(verify(as_bytes(msg), keys.ring, bad_c), DimensionError);
}

TEST_CASE("single-component mutations flip the decision") {
  const RingKeys& keys = desk_ring();
  const auto& p = keys.ring.params();
  ChaChaStream rng(24);
  std::vector<std::pair<std::string, RingSignature>> base;
  for (int t = 0; t < 50; ++t) {
    const std::string msg = fmt::format("mutate {}", t);
    base.emplace_back(msg, sign(as_bytes(msg), keys.ring, keys.secret_keys[t % 4], t % 4, rng));
  }
  int flipped = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    auto [msg, sig] = base[t % base.size()];
    switch (rng.uniform_below(3)) {
      case 0: {
        auto& z = sig.responses[rng.uniform_below(sig.responses.size())];
        z(Eigen::Index(rng.uniform_below(std::uint64_t(p.m)))) += rng.uniform_below(2) ? 1 : -1;
        break;
      }
      case 1: {
        const auto i = Eigen::Index(rng.uniform_below(std::uint64_t(p.k)));
        const std::int64_t old = sig.challenge.coeffs(i);
        sig.challenge.coeffs(i) = old == 1 ? 0 : old + 1;
        break;
      }
      default:
        msg[rng.uniform_below(msg.size())] ^= static_cast<char>(1 + rng.uniform_below(255));
    }
    flipped += verify(as_bytes(msg), keys.ring, sig).accepted ? 0 : 1;
  }
  CHECK(flipped == trials);
}

TEST_CASE("sign refuses a bad index, a misshapen key and an empty retry budget") {
  const RingKeys& keys = desk_ring();
  ChaChaStream rng(25);
  const std::string msg = "x";
  CHECK_THROWS_AS(sign(as_bytes(msg), keys.ring, keys.secret_keys[0], 4, rng), DimensionError);
  CHECK_THROWS_AS(sign(as_bytes(msg), keys.ring, SecretKey(IntMatrix::Zero(3, 3)), 0, rng), DimensionError);
  SignOptions none;
  none.max_attempts = 0;
  CHECK_THROWS_AS(sign(as_bytes(msg), keys.ring, keys.secret_keys[0], 0, rng, nullptr, none), RetryBudgetExhausted);
}
