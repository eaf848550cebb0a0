#include "lrs/params.hpp"
#include "lrs/types.hpp"

#include <doctest.h>

#include <cmath>

using namespace lrs;

namespace {

// Independent recomputation of the derived quantities, straight from the formulas.
struct Expected {
  std::int64_t w, m, d;
  double sigma_pre, sigma;
};

Expected recompute(std::int64_t n, std::int64_t q, std::int64_t kappa) {
  std::int64_t w = 0;
  while ((std::int64_t{1} << w) < q) ++w;
  const std::int64_t m = 6 * n * w;
  const double s1 = std::sqrt(5.0 * n * w) + std::sqrt(double(n * w));
  const double s_min = 6 * std::sqrt(5.0) * std::sqrt(1 + s1 * s1);
  const double sigma_pre = 1.2 * s_min;
  const auto d = static_cast<std::int64_t>(std::ceil(6 * sigma_pre));
  return {w, m, d, sigma_pre, 12.0 * d * kappa * std::sqrt(double(m))};
}

}  // namespace

TEST_CASE("derive_params recomputes w, m, d, sigma from the formulas") {
  for (auto [n, q, k, kappa] : {std::array<std::int64_t, 4>{1, 3, 4, 1}, {4, 97, 16, 4}, {64, 8191, 132, 24},
                                {2, 5, 8, 2}, {3, 257, 20, 5}}) {
    const ParameterSet p = derive_params(n, q, k, kappa);
    const Expected e = recompute(n, q, kappa);
    CHECK(p.w == e.w);
    CHECK(p.m == e.m);
    CHECK(p.d == e.d);
    CHECK(p.sigma_pre == doctest::Approx(e.sigma_pre).epsilon(1e-12));
    CHECK(p.sigma == doctest::Approx(e.sigma).epsilon(1e-12));
    CHECK(p.M == doctest::Approx(std::exp(1.0 + 1.0 / 288)).epsilon(1e-15));
    CHECK(p.tail_cut == 12);
    CHECK(p.m_bar() == 5 * n * p.w);
  }
}

TEST_CASE("hand-checked dimensions of the toy and desk presets") {
  const ParameterSet desk = preset("desk");
  CHECK(desk.w == 7);
  CHECK(desk.m == 168);
  const ParameterSet toy = preset("toy");
  CHECK(toy.w == 2);
  CHECK(toy.m == 12);
  CHECK(toy.d == 453);
  CHECK(desk.d == 1657);
  const ParameterSet paper = preset("paper");
  CHECK(paper.n == 64);
  CHECK(paper.q == 8191);
  CHECK(paper.w == 13);
  CHECK(paper.m == 4992);
}

TEST_CASE("composite or out-of-range inputs are rejected") {
  CHECK_THROWS_AS(derive_params(4, 4, 16, 4), ParameterError);
  CHECK_THROWS_AS(derive_params(4, 2, 16, 4), ParameterError);
  CHECK_THROWS_AS(derive_params(4, 97, 4, 5), ParameterError);
  CHECK_THROWS_AS(derive_params(0, 97, 16, 4), ParameterError);
  CHECK_THROWS_AS(derive_params(4, 97, 16, 0), ParameterError);
  CHECK_THROWS_AS(preset("huge"), ParameterError);
}

TEST_CASE("every shipped preset validates cleanly") {
  for (const auto& name : preset_names()) {
    const auto strict = name == "paper" ? Strictness::secure : Strictness::relaxed;
    CHECK_MESSAGE(validate(preset(name), strict).empty(), name);
  }
  // The small presets are intentionally below the challenge-space requirement.
  const auto v = validate(preset("desk"), Strictness::secure);
  CHECK(std::find(v.begin(), v.end(), "challenge space below 2^100") != v.end());
  CHECK(challenge_space_bits(132, 24) >= 100);
}

TEST_CASE("validate names the broken invariant") {
  auto has = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  ParameterSet p = preset("desk");
  p.m = 5 * p.n * 6;  // 5 n floor(log2 97)
  CHECK(has(validate(p), "m too small"));
  p = preset("desk");
  p.sigma = 0;
  CHECK(has(validate(p), "sigma not positive"));
  p = preset("desk");
  p.q = 91;
  CHECK(has(validate(p), "q not an odd prime"));
}

TEST_CASE("m exceeds 5 n log2 q with a guard band") {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    const auto scaled = static_cast<std::int64_t>(std::ceil(1000 * std::log2(double(p.q))));
    CHECK(p.m * 1000 > 5 * p.n * scaled);
  }
}

TEST_CASE("derive_params is pure and canonical text is sorted") {
  CHECK(derive_params(4, 97, 16, 4) == derive_params(4, 97, 16, 4));
  const std::string text = canonical_text(preset("toy"));
  std::vector<std::string> keys;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol - pos);
    keys.push_back(line.substr(0, line.find('=')));
    pos = eol + 1;
  }
  CHECK(keys.size() == 11);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(text.find("m=12\n") != std::string::npos);
}

TEST_CASE("norm bound is ceil((2 sigma sqrt m)^2) and exceeds int64 at the paper preset") {
  const auto p = preset("desk");
  // 576 * (1657 * 4 * 168)^2, computed outside this code base
  CHECK(norm_bound_squared(p) == wide_int(714177307017216LL));
  const long double approx = 4.0L * p.sigma * p.sigma * p.m;
  CHECK(std::fabs(static_cast<long double>(norm_bound_squared(p)) - approx) < 1.0L + approx * 1e-12L);
  CHECK(norm_bound_squared(preset("paper")) > wide_int(INT64_MAX));
}
