#include "lrs/bench.hpp"

#include "lrs/ringsig.hpp"
#include "lrs/wire.hpp"

#include <fmt/format.h>

#include <chrono>

namespace lrs {

BenchResult bench_scaling(const ParameterSet& params, const std::vector<std::size_t>& ring_sizes, std::size_t reps,
                          std::uint64_t seed) {
  if (ring_sizes.empty() || reps == 0) {
    throw ParameterError("bench_scaling: need ring sizes and at least one repetition");
  }
  for (std::size_t i = 0; i < ring_sizes.size(); ++i) {
    if (ring_sizes[i] == 0 || (i > 0 && ring_sizes[i] <= ring_sizes[i - 1])) {
      throw ParameterError("bench_scaling: ring sizes must be positive and strictly ascending");
    }
  }
  using clock = std::chrono::steady_clock;
  BenchResult result;
  std::vector<double> ls, sign_ms, verify_ms;
  ChaChaStream root(seed);
  for (const std::size_t l : ring_sizes) {
    ChaChaStream rng = root.split();
    const RingKeys keys = ring_keygen(params, l, rng);
    const RingPublic& ring = keys.ring;

    std::vector<std::string> msgs;
    for (std::size_t r = 0; r <= reps; ++r) {
      msgs.push_back(fmt::format("bench-{}-{}", l, r));
    }
    std::vector<RingSignature> sigs;
    sigs.push_back(sign(as_bytes(msgs[0]), ring, keys.secret_keys[0], 0, rng));  // warmup

    const auto t0 = clock::now();
    for (std::size_t r = 1; r <= reps; ++r) {
      sigs.push_back(sign(as_bytes(msgs[r]), ring, keys.secret_keys[r % l], r % l, rng));
    }
    const auto t1 = clock::now();
    (void)verify(as_bytes(msgs[0]), ring, sigs[0]);  // warmup
    std::size_t accepted = 0;
    const auto t2 = clock::now();
    for (std::size_t r = 1; r <= reps; ++r) {
      accepted += verify(as_bytes(msgs[r]), ring, sigs[r]).accepted ? 1 : 0;
    }
    const auto t3 = clock::now();
    if (accepted != reps) {
      throw Error("bench_scaling: a freshly made signature failed to verify");
    }

    BenchRow row;
    row.ring_size = l;
    row.sign_ms = std::chrono::duration<double, std::milli>(t1 - t0).count() / static_cast<double>(reps);
    row.verify_ms = std::chrono::duration<double, std::milli>(t3 - t2).count() / static_cast<double>(reps);
    row.bytes = serialize_signature(params, sigs[1]).size();
    row.entries = signature_entry_count(l, params.m, params.k);
    result.rows.push_back(row);
    ls.push_back(static_cast<double>(l));
    sign_ms.push_back(row.sign_ms);
    verify_ms.push_back(row.verify_ms);
  }
  if (ls.size() >= 2) {
    result.sign_fit = linear_fit(ls, sign_ms);
    result.verify_fit = linear_fit(ls, verify_ms);
  }
  return result;
}

std::string format_bench(const BenchResult& result) {
  std::string out = fmt::format("{:>4} {:>12} {:>12} {:>10} {:>10}\n", "l", "sign_ms", "verify_ms", "bytes", "entries");
  for (const auto& r : result.rows) {
    out += fmt::format("{:>4} {:>12.4f} {:>12.4f} {:>10} {:>10}\n", r.ring_size, r.sign_ms, r.verify_ms, r.bytes,
                       r.entries);
  }
  if (result.rows.size() >= 2) {
    out += fmt::format("sign_fit slope_ms={:.5f} intercept_ms={:.5f} r2={:.4f}\n", result.sign_fit.slope,
                       result.sign_fit.intercept, result.sign_fit.r_squared);
    out += fmt::format("verify_fit slope_ms={:.5f} intercept_ms={:.5f} r2={:.4f}\n", result.verify_fit.slope,
                       result.verify_fit.intercept, result.verify_fit.r_squared);
  }
  return out;
}

}  // namespace lrs
