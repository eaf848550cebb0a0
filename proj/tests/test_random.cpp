#include "lrs/random.hpp"

#include <doctest.h>

#include <array>
#include <set>

using namespace lrs;

TEST_CASE("ChaCha streams are deterministic per (seed, stream)") {
  ChaChaStream a(42), b(42), c(43), d(42, 1);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 2000; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
}

TEST_CASE("split streams are independent of the parent's continuation") {
  ChaChaStream parent(5);
  ChaChaStream child = parent.split();
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    seen.insert(parent.next_u64());
    seen.insert(child.next_u64());
  }
  CHECK(seen.size() == 2000);
}

TEST_CASE("uniform_below is unbiased on a small range") {
  // chi-square with 2 degrees of freedom, 0.01 critical value 9.2103. Each seed
  // fails with probability 0.01, so 20 seeds with more than 2 failures would be
  // a 1-in-1000 event for an unbiased sampler.
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ChaChaStream rng(seed);
    std::array<int, 3> counts{};
    const int n = 90000;
    for (int i = 0; i < n; ++i) ++counts[rng.uniform_below(3)];
    double chi = 0;
    for (int c : counts) chi += (c - n / 3.0) * (c - n / 3.0) / (n / 3.0);
    failures += chi < 9.2103 ? 0 : 1;
  }
  CHECK(failures <= 2);
}

TEST_CASE("scripted source yields exact uniforms and then runs dry") {
  ScriptedSource s({ScriptedSource::word_for_uniform(0.5), ScriptedSource::word_for_uniform(0.25)});
  CHECK(ScriptedSource::word_for_uniform(0.5) == (std::uint64_t{1} << 63));
  CHECK(s.uniform01() == 0.5);
  CHECK(s.uniform01() == 0.25);
  CHECK(s.remaining() == 0);
  CHECK_THROWS_AS(s.next_u64(), RandomnessExhausted);
}

TEST_CASE("shake256 matches the published empty-input vector") {
  const auto h = shake256({}, 32);
  const std::array<std::uint8_t, 8> prefix{0x46, 0xb9, 0xdd, 0x2b, 0x0b, 0xa8, 0x8d, 0x13};
  CHECK(std::equal(prefix.begin(), prefix.end(), h.begin()));
}

TEST_CASE("xof stream is deterministic and message-bound") {
  XofStream a({1, 2, 3}), b({1, 2, 3}), c({1, 2, 4});
  bool differ = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ = differ || x != c.next_u64();
  }
  CHECK(differ);
}

TEST_CASE("standard_normal has unit variance") {
  ChaChaStream rng(1);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.standard_normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1) < 0.015);
}
