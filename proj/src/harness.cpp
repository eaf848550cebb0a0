#include "lrs/harness.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <unordered_map>

namespace lrs {

namespace {

void put_u32(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

// Odometer over [-radius, radius]^m with the last coordinate fastest, i.e.
// lexicographic order. Returns false after the last vector.
bool advance(IntVector& x, std::int64_t radius) {
  for (Eigen::Index i = x.size() - 1; i >= 0; --i) {
    if (x(i) < radius) {
      ++x(i);
      return true;
    }
    x(i) = -radius;
  }
  return false;
}

std::uint64_t enumeration_size(std::int64_t radius, std::int64_t m) {
  const double size = std::pow(static_cast<double>(2 * radius + 1), static_cast<double>(m));
  if (size > 1e7) {
    throw EnumerationTooLarge(fmt::format("(2*{}+1)^{} exceeds 1e7", radius, m));
  }
  return static_cast<std::uint64_t>(std::llround(size));
}

// Syndrome A x mod q as a base-q index.
std::uint64_t syndrome_index(const IntVector& s, std::int64_t q) {
  std::uint64_t idx = 0;
  for (Eigen::Index i = s.size() - 1; i >= 0; --i) {
    idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(s(i));
  }
  return idx;
}

std::vector<double> normalized(const IntVector& z, double sigma) {
  std::vector<double> out(static_cast<std::size_t>(z.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<double>(z(i)) / sigma;
  }
  return out;
}

double scaled_norm(const IntVector& z, double sigma) {
  return static_cast<double>(static_cast<long double>(norms(z).l2_squared) /
                             (static_cast<long double>(sigma) * sigma * static_cast<double>(z.size())));
}

std::optional<RingSignature> hybrid2_attempt(const RingPublic& ring, RandomSource& rng, Challenge& c) {
  const auto& p = ring.params();
  c = expand_challenge(rng, p.k, p.kappa);
  std::vector<IntVector> zs(ring.size());
  for (auto& z : zs) {
    z = sample_vec(ring.sampler(), p.m, rng);
  }
  if (!(rng.uniform01() < 1.0 / p.M) || !responses_within_bound(p, zs)) {
    return std::nullopt;
  }
  return RingSignature{std::move(zs), c};
}

}  // namespace

Bytes ProgrammableOracle::key(const IntVector& w, ByteView ring_digest, ByteView msg) {
  Bytes k;
  put_u32(k, static_cast<std::uint64_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    put_u32(k, static_cast<std::uint64_t>(w(i)));
  }
  put_u32(k, ring_digest.size());
  k.insert(k.end(), ring_digest.begin(), ring_digest.end());
  k.insert(k.end(), msg.begin(), msg.end());
  return k;
}

Challenge ProgrammableOracle::query(const IntVector& w, ByteView ring_digest, ByteView msg) {
  auto [it, inserted] = table_.try_emplace(key(w, ring_digest, msg));
  if (inserted) {
    it->second = hash_challenge(w, ring_digest, msg, k_, kappa_);
  }
  return it->second;
}

void ProgrammableOracle::program(const IntVector& w, ByteView ring_digest, ByteView msg, const Challenge& c) {
  auto [it, inserted] = table_.insert_or_assign(key(w, ring_digest, msg), c);
  if (!inserted) {
    ++collisions_;
  }
  ++programmed_;
}

bool ProgrammableOracle::is_set(const IntVector& w, ByteView ring_digest, ByteView msg) const {
  return table_.contains(key(w, ring_digest, msg));
}

ChallengeOracle ProgrammableOracle::as_challenge_oracle() {
  return [this](const IntVector& w, ByteView digest, ByteView msg) { return query(w, digest, msg); };
}

TranscriptSample real_sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                           RandomSource& rng) {
  SignTrace trace;
  RingSignature sig = sign(msg, ring, key, signer, rng, &trace);
  return {std::move(sig), trace.attempts, TranscriptSource::real};
}

TranscriptSample hybrid1_sign(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                              ProgrammableOracle& oracle, RandomSource& rng, const SignOptions& options) {
  const auto& p = ring.params();
  if (signer >= ring.size()) {
    throw DimensionError("hybrid1_sign: signer outside ring");
  }
  std::vector<IntVector> masks(ring.size());
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    for (auto& y : masks) {
      y = sample_vec(ring.sampler(), p.m, rng);
    }
    Challenge c = expand_challenge(rng, p.k, p.kappa);
    const IntVector shift = key.matrix() * c.coeffs;
    std::vector<IntVector> zs = masks;
    zs[signer] = shift + masks[signer];
    if (!rejection_step(zs[signer], shift, ring.sampler(), p.M, rng) || !responses_within_bound(p, zs)) {
      continue;
    }
    oracle.program(ring_commitment(ring, zs, c), ring.digest(), msg, c);
    return {RingSignature{std::move(zs), std::move(c)}, attempt, TranscriptSource::hybrid1};
  }
  throw RetryBudgetExhausted("hybrid1_sign: retry budget exhausted");
}

TranscriptSample hybrid2_sign(ByteView msg, const RingPublic& ring, ProgrammableOracle& oracle, RandomSource& rng,
                              const SignOptions& options) {
  Challenge c;
  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    auto sig = hybrid2_attempt(ring, rng, c);
    if (!sig) {
      continue;
    }
    oracle.program(ring_commitment(ring, sig->responses, sig->challenge), ring.digest(), msg, sig->challenge);
    return {std::move(*sig), attempt, TranscriptSource::hybrid2};
  }
  throw RetryBudgetExhausted("hybrid2_sign: retry budget exhausted");
}

double rejection_acceptance_rate(const RingPublic& ring, const SecretKey& key, std::size_t trials, RandomSource& rng) {
  const auto& p = ring.params();
  std::size_t accepted = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Challenge c = expand_challenge(rng, p.k, p.kappa);
    const IntVector shift = key.matrix() * c.coeffs;
    const IntVector z = shift + sample_vec(ring.sampler(), p.m, rng);
    accepted += rejection_step(z, shift, ring.sampler(), p.M, rng) ? 1 : 0;
  }
  return static_cast<double>(accepted) / static_cast<double>(trials);
}

double hybrid2_emission_rate(const RingPublic& ring, std::size_t trials, RandomSource& rng) {
  std::size_t emitted = 0;
  Challenge c;
  for (std::size_t t = 0; t < trials; ++t) {
    emitted += hybrid2_attempt(ring, rng, c) ? 1 : 0;
  }
  return static_cast<double>(emitted) / static_cast<double>(trials);
}

RingSignature sign_with_mode(ByteView msg, const RingPublic& ring, const SecretKey& key, std::size_t signer,
                             RandomSource& rng, SignerMode mode) {
  if (mode == SignerMode::correct) {
    return sign(msg, ring, key, signer, rng);
  }
  const auto& p = ring.params();
  std::vector<IntVector> zs(ring.size());
  for (auto& y : zs) {
    y = sample_vec(ring.sampler(), p.m, rng);
  }
  Challenge c = hash_challenge(ring_commitment(ring, zs), ring.digest(), msg, p.k, p.kappa);
  zs[signer] += key.matrix() * c.coeffs;
  return {std::move(zs), std::move(c)};
}

AnonymityReport anonymity_experiment(const RingKeys& keys, std::size_t i0, std::size_t i1, std::size_t samples,
                                     RandomSource& rng, SignerMode mode) {
  const RingPublic& ring = keys.ring;
  const double sigma = ring.params().sigma;
  const std::size_t l = ring.size();
  if (i0 >= l || i1 >= l) {
    throw DimensionError("anonymity_experiment: signer index outside ring");
  }
  if (samples == 0) {
    throw ParameterError("anonymity_experiment: need at least one sample");
  }

  struct Arm {
    std::vector<double> coords0, coords1, proj0, proj1;
    std::vector<std::vector<double>> norm2;
  };
  auto projection = [sigma](const IntVector& z, const IntMatrix& s, const Challenge& c) {
    const IntVector shift = s * c.coeffs;
    const long double len = std::sqrt(static_cast<long double>(norms(shift).l2_squared));
    return len == 0 ? 0.0 : static_cast<double>(static_cast<long double>(inner_product(z, shift)) / len / sigma);
  };
  auto run_arm = [&](std::size_t signer) {
    Arm arm;
    arm.norm2.resize(l);
    for (std::size_t t = 0; t < samples; ++t) {
      const std::string msg = fmt::format("anonymity-{}", t);
      const RingSignature sig = sign_with_mode(as_bytes(msg), ring, keys.secret_keys[signer], signer, rng, mode);
      const auto c0 = normalized(sig.responses[i0], sigma);
      const auto c1 = normalized(sig.responses[i1], sigma);
      arm.coords0.insert(arm.coords0.end(), c0.begin(), c0.end());
      arm.coords1.insert(arm.coords1.end(), c1.begin(), c1.end());
      arm.proj0.push_back(projection(sig.responses[i0], keys.secret_keys[i0].matrix(), sig.challenge));
      arm.proj1.push_back(projection(sig.responses[i1], keys.secret_keys[i1].matrix(), sig.challenge));
      for (std::size_t i = 0; i < l; ++i) {
        arm.norm2[i].push_back(scaled_norm(sig.responses[i], sigma));
      }
    }
    return arm;
  };

  const Arm a = run_arm(i0);
  const Arm b = run_arm(i1);
  AnonymityReport report;
  report.tests.push_back({fmt::format("coords_z{}", i0), ks_two_sample(a.coords0, b.coords0)});
  report.tests.push_back({fmt::format("coords_z{}", i1), ks_two_sample(a.coords1, b.coords1)});
  for (std::size_t i = 0; i < l; ++i) {
    report.tests.push_back({fmt::format("norm2_z{}", i), ks_two_sample(a.norm2[i], b.norm2[i])});
  }
  report.tests.push_back({fmt::format("proj_z{}", i0), ks_two_sample(a.proj0, b.proj0)});
  report.tests.push_back({fmt::format("proj_z{}", i1), ks_two_sample(a.proj1, b.proj1)});
  report.pass = std::all_of(report.tests.begin(), report.tests.end(), [](const NamedKs& t) { return t.result.pass; });
  return report;
}

AnonymityReport compare_transcripts(const RingPublic& ring, std::span<const TranscriptSample> a,
                                    std::span<const TranscriptSample> b) {
  const double sigma = ring.params().sigma;
  const std::size_t l = ring.size();
  struct Stats {
    std::vector<double> coords, chal;
    std::vector<std::vector<double>> norm2;
  };
  auto collect = [&](std::span<const TranscriptSample> xs) {
    Stats s;
    s.norm2.resize(l);
    for (const auto& t : xs) {
      for (std::size_t i = 0; i < l; ++i) {
        const auto c = normalized(t.signature.responses[i], sigma);
        s.coords.insert(s.coords.end(), c.begin(), c.end());
        s.norm2[i].push_back(scaled_norm(t.signature.responses[i], sigma));
      }
      double pos = 0;
      const IntVector& cc = t.signature.challenge.coeffs;
      for (Eigen::Index i = 0; i < cc.size(); ++i) {
        pos += static_cast<double>((i + 1) * cc(i));
      }
      s.chal.push_back(pos);
    }
    return s;
  };
  const Stats sa = collect(a);
  const Stats sb = collect(b);
  AnonymityReport report;
  report.tests.push_back({"coords", ks_two_sample(sa.coords, sb.coords)});
  for (std::size_t i = 0; i < l; ++i) {
    report.tests.push_back({fmt::format("norm2_z{}", i), ks_two_sample(sa.norm2[i], sb.norm2[i])});
  }
  report.tests.push_back({"challenge_positions", ks_two_sample(sa.chal, sb.chal)});
  report.pass = std::all_of(report.tests.begin(), report.tests.end(), [](const NamedKs& t) { return t.result.pass; });
  return report;
}

CensusResult collision_census(const ModMatrix& a, std::int64_t d) {
  if (d < 0) {
    throw ParameterError("collision_census: d must be nonnegative");
  }
  const std::uint64_t total = enumeration_size(d, a.cols());
  const double qn = std::pow(static_cast<double>(a.modulus()), static_cast<double>(a.rows()));
  if (qn > 1.8e19) {
    throw EnumerationTooLarge("collision_census: q^n does not fit a 64-bit syndrome index");
  }
  std::unordered_map<std::uint64_t, std::uint64_t> buckets;
  IntVector s = IntVector::Constant(a.cols(), -d);
  do {
    ++buckets[syndrome_index(mat_vec_mod(a, s), a.modulus())];
  } while (advance(s, d));

  CensusResult r;
  r.total = total;
  for (const auto& [idx, count] : buckets) {
    r.unique += count == 1 ? 1 : 0;
  }
  r.bound = qn / static_cast<double>(total);
  // unique/total <= q^n/total  <=>  unique <= q^n, compared exactly.
  r.holds = static_cast<long double>(r.unique) <= static_cast<long double>(qn);
  return r;
}

std::optional<IntVector> sis_bruteforce(const ModMatrix& a, double beta, std::int64_t radius) {
  if (radius < 0) {
    throw ParameterError("sis_bruteforce: radius must be nonnegative");
  }
  enumeration_size(radius, a.cols());
  const long double beta2 = static_cast<long double>(beta) * beta;
  IntVector v = IntVector::Constant(a.cols(), -radius);
  do {
    if (v.isZero()) {
      continue;
    }
    if (static_cast<long double>(norms(v).l2_squared) > beta2) {
      continue;
    }
    if (mat_vec_mod(a, v).isZero()) {
      return v;
    }
  } while (advance(v, radius));
  return std::nullopt;
}

ExtractionResult extract_sis_witness(const RingKeys& keys, std::span<const SecretKey> alternates, ByteView msg,
                                     std::size_t signer, RandomSource& rng) {
  const RingPublic& ring = keys.ring;
  const auto& p = ring.params();
  if (signer >= ring.size() || alternates.size() != ring.size()) {
    throw DimensionError("extract_sis_witness: need a signer in the ring and one alternate key per member");
  }
  const IntMatrix& s = keys.secret_keys[signer].matrix();
  const GaussSampler& sampler = ring.sampler();
  constexpr std::size_t kBudget = 1000;

  for (std::size_t restart = 0; restart < kBudget; ++restart) {
    std::vector<IntVector> masks(ring.size());
    for (auto& y : masks) {
      y = sample_vec(sampler, p.m, rng);
    }
    auto respond = [&](const Challenge& c) -> std::optional<std::vector<IntVector>> {
      const IntVector shift = s * c.coeffs;
      std::vector<IntVector> zs = masks;
      zs[signer] = shift + masks[signer];
      if (!rejection_step(zs[signer], shift, sampler, p.M, rng) || !responses_within_bound(p, zs)) {
        return std::nullopt;
      }
      return zs;
    };
    const Challenge c = expand_challenge(rng, p.k, p.kappa);
    const auto first = respond(c);
    if (!first) {
      continue;
    }
    // Fork: same y, fresh challenge, until the signer's response is accepted again.
    for (std::size_t fork = 0; fork < kBudget; ++fork) {
      const Challenge c2 = expand_challenge(rng, p.k, p.kappa);
      if (c2 == c) {
        continue;
      }
      const auto second = respond(c2);
      if (!second) {
        continue;
      }
      const IntVector w = ring_commitment(ring, masks);
      ProgrammableOracle h1(p);
      ProgrammableOracle h2(p);
      h1.program(w, ring.digest(), msg, c);
      h2.program(w, ring.digest(), msg, c2);
      const RingSignature sig1{*first, c};
      const RingSignature sig2{*second, c2};

      ExtractionResult r;
      r.forks_verified = verify(msg, ring, sig1, h1.as_challenge_oracle()).accepted &&
                         verify(msg, ring, sig2, h2.as_challenge_oracle()).accepted;
      std::vector<IntVector> blocks(ring.size());
      for (std::size_t i = 0; i < ring.size(); ++i) {
        blocks[i] = (*second)[i] - (*first)[i];
      }
      blocks[signer] -= alternates[signer].matrix() * (c2.coeffs - c.coeffs);
      r.v = concat_v(blocks);
      r.in_kernel = mat_vec_mod(concat_h(ring.members()), r.v).isZero();
      r.nonzero = !r.v.isZero();
      const long double radius = 4.0L * p.sigma + 2.0L * static_cast<long double>(p.d) * p.kappa;
      const long double bound2 = radius * radius * static_cast<long double>(p.m) * static_cast<long double>(ring.size());
      r.bound_ok = static_cast<long double>(norms(r.v).l2_squared) <= bound2;
      return r;
    }
  }
  throw RetryBudgetExhausted("extract_sis_witness: no accepted fork");
}

std::vector<std::map<std::int64_t, double>> coset_marginals_exact(const ModMatrix& a, const IntVector& y, double sigma,
                                                                  std::int64_t radius) {
  const std::int64_t q = a.modulus();
  const std::int64_t n = a.rows();
  const std::int64_t m = a.cols();
  const double states_d = std::pow(static_cast<double>(q), static_cast<double>(n));
  if (states_d > 4096) {
    throw EnumerationTooLarge("coset_marginals_exact: q^n exceeds 4096");
  }
  if (y.size() != n) {
    throw DimensionError("coset_marginals_exact: syndrome length differs from rows of A");
  }
  const auto states = static_cast<std::size_t>(states_d);

  // Residue index arithmetic on base-q digit vectors.
  auto index_of = [&](const IntVector& r) { return syndrome_index(r, q); };
  std::vector<IntVector> residue(states);
  for (std::size_t s = 0; s < states; ++s) {
    IntVector r(n);
    std::size_t rest = s;
    for (std::int64_t i = 0; i < n; ++i) {
      r(i) = static_cast<std::int64_t>(rest % static_cast<std::size_t>(q));
      rest /= static_cast<std::size_t>(q);
    }
    residue[s] = r;
  }
  auto add_index = [&](std::size_t s, std::size_t t) {
    return index_of((residue[s] + residue[t]).unaryExpr([q](std::int64_t v) { return mod_q(v, q); }));
  };

  // Per-column syndrome distribution of x * a_j, x ~ rho_sigma on [-radius, radius].
  std::vector<std::vector<double>> column(static_cast<std::size_t>(m), std::vector<double>(states, 0.0));
  for (std::int64_t j = 0; j < m; ++j) {
    const IntVector aj = a.residues().col(j);
    for (std::int64_t x = -radius; x <= radius; ++x) {
      const IntVector r = (aj * x).unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
      column[static_cast<std::size_t>(j)][index_of(r)] += gaussian_weight(static_cast<double>(x), sigma);
    }
  }
  auto convolve = [&](const std::vector<double>& f, const std::vector<double>& g) {
    std::vector<double> h(states, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      if (f[s] == 0) continue;
      for (std::size_t t = 0; t < states; ++t) {
        if (g[t] == 0) continue;
        h[add_index(s, t)] += f[s] * g[t];
      }
    }
    return h;
  };
  std::vector<double> delta(states, 0.0);
  delta[0] = 1.0;
  std::vector<std::vector<double>> prefix(static_cast<std::size_t>(m) + 1, delta);
  std::vector<std::vector<double>> suffix(static_cast<std::size_t>(m) + 1, delta);
  for (std::int64_t j = 0; j < m; ++j) {
    prefix[static_cast<std::size_t>(j) + 1] = convolve(prefix[static_cast<std::size_t>(j)], column[static_cast<std::size_t>(j)]);
  }
  for (std::int64_t j = m - 1; j >= 0; --j) {
    suffix[static_cast<std::size_t>(j)] = convolve(suffix[static_cast<std::size_t>(j) + 1], column[static_cast<std::size_t>(j)]);
  }

  const IntVector target = y.unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
  std::vector<std::map<std::int64_t, double>> out(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    const auto others = convolve(prefix[static_cast<std::size_t>(j)], suffix[static_cast<std::size_t>(j) + 1]);
    const IntVector aj = a.residues().col(j);
    double total = 0;
    auto& marginal = out[static_cast<std::size_t>(j)];
    for (std::int64_t x = -radius; x <= radius; ++x) {
      const IntVector need = (target - aj * x).unaryExpr([q](std::int64_t v) { return mod_q(v, q); });
      const double p = gaussian_weight(static_cast<double>(x), sigma) * others[index_of(need)];
      if (p > 0) {
        marginal[x] = p;
        total += p;
      }
    }
    if (total == 0) {
      throw ParameterError("coset_marginals_exact: coset has no point inside the radius");
    }
    for (auto& [x, p] : marginal) {
      p /= total;
    }
  }
  return out;
}

void Report::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

void Report::add_check(const std::string& key, bool pass) {
  add(key, pass ? "pass" : "fail");
  pass_ = pass_ && pass;
}

std::string Report::text() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += fmt::format("{}={}\n", k, v);
  }
  out += fmt::format("overall={}\n", pass_ ? "pass" : "fail");
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : entries_) {
    j["results"][k] = v;
  }
  j["pass"] = pass_;
  return j.dump(2);
}

Report run_selftest(const ParameterSet& params, std::uint64_t seed, const SelftestOptions& options) {
  Report report;
  ChaChaStream rng(seed);
  std::vector<SecretKey> alternates;
  const RingKeys keys = ring_keygen(params, options.ring_size, rng, &alternates);
  const RingPublic& ring = keys.ring;
  const std::size_t l = ring.size();
  report.add("ring_size", std::to_string(l));

  std::size_t accepted = 0;
  std::size_t attempts = 0;
  for (std::size_t t = 0; t < options.roundtrips; ++t) {
    const std::string msg = fmt::format("selftest-{}", t);
    const TranscriptSample ts = real_sign(as_bytes(msg), ring, keys.secret_keys[t % l], t % l, rng);
    attempts += ts.restarts;
    accepted += verify(as_bytes(msg), ring, ts.signature).accepted ? 1 : 0;
  }
  report.add("completeness.accepted", fmt::format("{}/{}", accepted, options.roundtrips));
  report.add("completeness.mean_attempts", fmt::format("{:.4f}", static_cast<double>(attempts) / options.roundtrips));
  report.add_check("completeness", accepted == options.roundtrips);

  const double rate = rejection_acceptance_rate(ring, keys.secret_keys[0], options.rejection_trials, rng);
  report.add("rejection.acceptance", fmt::format("{:.5f}", rate));
  report.add("rejection.expected", fmt::format("{:.5f}", 1.0 / params.M));
  report.add_check("rejection", std::abs(rate - 1.0 / params.M) <= 0.02);

  if (l >= 2) {
    const AnonymityReport anon = anonymity_experiment(keys, 0, 1, options.anonymity_samples, rng);
    for (const auto& t : anon.tests) {
      report.add("anonymity." + t.name, fmt::format("{:.5f}/{:.5f}", t.result.statistic, t.result.critical));
    }
    report.add_check("anonymity", anon.pass);
  }

  std::vector<TranscriptSample> real;
  std::vector<TranscriptSample> hyb;
  ProgrammableOracle oracle(params);
  bool hybrids_verify = true;
  for (std::size_t t = 0; t < options.anonymity_samples; ++t) {
    const std::string msg = fmt::format("hybrid-{}", t);
    real.push_back(real_sign(as_bytes(msg), ring, keys.secret_keys[0], 0, rng));
    hyb.push_back(hybrid2_sign(as_bytes(msg), ring, oracle, rng));
    hybrids_verify = hybrids_verify && verify(as_bytes(msg), ring, hyb.back().signature, oracle.as_challenge_oracle());
  }
  const AnonymityReport hyb_report = compare_transcripts(ring, real, hyb);
  for (const auto& t : hyb_report.tests) {
    report.add("hybrid2." + t.name, fmt::format("{:.5f}/{:.5f}", t.result.statistic, t.result.critical));
  }
  report.add_check("hybrid2.verifies", hybrids_verify);
  report.add_check("hybrid2.indistinguishable", hyb_report.pass);

  std::size_t kernel = 0, bounded = 0, nonzero = 0;
  for (std::size_t t = 0; t < options.extraction_trials; ++t) {
    const std::string msg = fmt::format("extract-{}", t);
    const ExtractionResult r = extract_sis_witness(keys, alternates, as_bytes(msg), t % l, rng);
    kernel += r.in_kernel && r.forks_verified ? 1 : 0;
    bounded += r.bound_ok ? 1 : 0;
    nonzero += r.nonzero ? 1 : 0;
  }
  report.add("extraction.in_kernel", fmt::format("{}/{}", kernel, options.extraction_trials));
  report.add("extraction.bound_ok", fmt::format("{}/{}", bounded, options.extraction_trials));
  report.add("extraction.nonzero", fmt::format("{}/{}", nonzero, options.extraction_trials));
  report.add_check("extraction", kernel == options.extraction_trials && bounded == options.extraction_trials &&
                                     nonzero * 100 >= 95 * options.extraction_trials);

  bool census_ok = true;
  for (std::int64_t m = 4; m <= 6; ++m) {
    IntMatrix a(1, m);
    for (std::int64_t j = 0; j < m; ++j) {
      a(0, j) = static_cast<std::int64_t>(rng.uniform_below(3));
    }
    const CensusResult c = collision_census(ModMatrix::reduce(a, 3), 1);
    report.add(fmt::format("census.m{}", m), fmt::format("{}/{}", c.unique, c.total));
    census_ok = census_ok && c.holds;
  }
  report.add_check("census", census_ok);
  return report;
}

}  // namespace lrs
