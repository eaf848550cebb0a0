#include "lrs/gaussian.hpp"
#include "lrs/stats.hpp"
#include "lrs/types.hpp"

#include <doctest.h>

using namespace lrs;

TEST_CASE("identical samples give a zero KS statistic") {
  const std::vector<double> a{1, 2, 2, 3, 5};
  const KsResult r = ks_two_sample(a, a);
  CHECK(r.statistic == 0);
  CHECK(r.pass);
  CHECK(r.critical == doctest::Approx(1.628 * std::sqrt(10.0 / 25.0)));
}

TEST_CASE("KS statistic on a hand-computed pair") {
  // CDFs: A jumps at 1,2 (to .5, 1), B at 3,4; max gap 1.
  const std::vector<double> a{1, 2}, b{3, 4};
  CHECK(ks_two_sample(a, b).statistic == 1);
  const std::vector<double> c{1, 3}, d{2, 4};
  CHECK(ks_two_sample(c, d).statistic == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_two_sample({}, a), DimensionError);
}

TEST_CASE("KS detects a shift of five standard deviations and not a fresh split") {
  ChaChaStream rng(77);
  const GaussSampler g(1.0, 12);
  std::vector<double> x, y, z;
  for (int i = 0; i < 10000; ++i) {
    x.push_back(double(sample_z(g, rng)));
    y.push_back(double(sample_z(g, rng) + 5));
  }
  ChaChaStream child = rng.split();
  for (int i = 0; i < 10000; ++i) z.push_back(double(sample_z(g, child)));
  CHECK_FALSE(ks_two_sample(x, y).pass);
  CHECK(ks_two_sample(x, z).pass);
}

TEST_CASE("total variation and rebinning") {
  std::map<std::int64_t, double> p{{0, 0.5}, {1, 0.25}, {2, 0.25}};
  std::map<std::int64_t, double> q{{0, 0.25}, {1, 0.25}, {3, 0.5}};
  CHECK(total_variation(p, q) == doctest::Approx(0.5));
  CHECK(total_variation(p, p) == 0);
  const Histogram h = rebin(p, 2.0);
  CHECK(h.at(0) == doctest::Approx(0.75));
  CHECK(h.at(1) == doctest::Approx(0.25));
  const std::vector<std::int64_t> s{-1, 0, 1, 2};
  const Histogram e = empirical_histogram(s, 2.0);
  CHECK(e.at(-1) == doctest::Approx(0.25));
  CHECK(e.at(0) == doctest::Approx(0.5));
}

TEST_CASE("linear fit recovers an exact line and reports R^2") {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 5, 9, 17};
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2));
  CHECK(f.intercept == doctest::Approx(1));
  CHECK(f.r_squared == doctest::Approx(1));
  const std::vector<double> flat{1, 1, 1, 1};
  CHECK_THROWS_AS(linear_fit(flat, y), DimensionError);
  const std::vector<double> noisy{1, 4, 2, 3};
  CHECK(linear_fit(x, noisy).r_squared < 0.5);
}
