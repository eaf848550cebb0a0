#include "lrs/gaussian.hpp"
#include "lrs/stats.hpp"
#include "lrs/trapdoor.hpp"

#include <doctest.h>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <cmath>

using namespace lrs;

TEST_CASE("gadget decomposition inverts G") {
  const GadgetMatrix g(3, 7, 97);
  ChaChaStream rng(2);
  for (int t = 0; t < 200; ++t) {
    IntVector y(3);
    for (int i = 0; i < 3; ++i) y(i) = std::int64_t(rng.uniform_below(97));
    const IntVector x = g.decompose(y);
    CHECK(x.minCoeff() >= 0);
    CHECK(x.maxCoeff() <= 1);
    CHECK(g.apply(x) == y);
    CHECK(mat_vec_mod(g.dense(), x) == y);
  }
}

TEST_CASE("gadget block basis spans the kernel with short Gram-Schmidt vectors") {
  for (auto [w, q] : {std::pair<std::int64_t, std::int64_t>{2, 3}, {7, 97}, {13, 8191}}) {
    const GadgetMatrix g(1, w, q);
    const IntMatrix& b = g.block_basis();
    const ModMatrix gd = g.dense();
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const IntVector col = b.col(j);
      CHECK(mat_vec_mod(gd, col).isZero());
    }
    CHECK(std::abs(b.cast<double>().determinant()) == doctest::Approx(double(q)));
    CHECK(g.gram_schmidt_norms().maxCoeff() <= std::sqrt(5.0) + 1e-9);
  }
}

TEST_CASE("gadget preimages hit the syndrome for any rounding") {
  const GadgetMatrix g(2, 7, 97);
  IntVector t(2);
  t << 45, 96;
  const IntVector nearest = gadget_preimage(g, t, gadget_sigma(), [](double c, double) { return std::llround(c); });
  CHECK(g.apply(nearest) == t);
  ChaChaStream rng(4);
  for (int i = 0; i < 200; ++i) {
    CHECK(g.apply(gadget_preimage(g, t, gadget_sigma(), rng)) == t);
  }
}

TEST_CASE("gadget preimage distribution is close to the exact coset Gaussian") {
  // Single block, q = 3, w = 2: the coset is small enough to enumerate.
  const GadgetMatrix g(1, 2, 3);
  IntVector t(1);
  t << 2;
  const double sg = gadget_sigma();
  const double std_g = parameter_to_stddev(sg);
  const auto exact = sample_coset_bruteforce(g.dense(), t, std_g, 64);
  ChaChaStream rng(12);
  const int draws = 20000;
  // Joint histogram on sg-wide bins in both coordinates.
  auto cell = [sg](std::int64_t a, std::int64_t b) {
    const auto ia = static_cast<std::int64_t>(std::floor(double(a) / sg));
    const auto ib = static_cast<std::int64_t>(std::floor(double(b) / sg));
    return ia * 1000 + ib;
  };
  Histogram expected, observed;
  for (const auto& [pt, p] : exact) expected[cell(pt[0], pt[1])] += p;
  for (int i = 0; i < draws; ++i) {
    const IntVector x = gadget_preimage(g, t, sg, rng);
    observed[cell(x(0), x(1))] += 1.0 / draws;
  }
  CHECK(total_variation(expected, observed) <= 0.05);
}

TEST_CASE("power iteration agrees with a full SVD") {
  ChaChaStream rng(6);
  IntMatrix r(40, 8);
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = std::int64_t(rng.uniform_below(3)) - 1;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.cast<double>());
  CHECK(largest_singular_value(r) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-6));
}

TEST_CASE("trap_gen satisfies A [R; I] = G with ternary R") {
  const ParameterSet p = preset("desk");
  ChaChaStream rng(8);
  const TrapdoorKeypair kp = trap_gen(p, rng);
  CHECK(kp.A.rows() == p.n);
  CHECK(kp.A.cols() == p.m);
  CHECK(kp.R.rows() == p.m_bar());
  CHECK(kp.R.cols() == p.n * p.w);
  CHECK(kp.R.cwiseAbs().maxCoeff() <= 1);
  IntMatrix b(p.m, p.n * p.w);
  b.topRows(p.m_bar()) = kp.R;
  b.bottomRows(p.n * p.w) = IntMatrix::Identity(p.n * p.w, p.n * p.w);
  CHECK(mat_mul_mod(kp.A, b) == GadgetMatrix(p.n, p.w, p.q).dense());
  // Entry frequencies 1/4, 1/2, 1/4.
  const double zeros = double((kp.R.array() == 0).count()) / double(kp.R.size());
  CHECK(zeros == doctest::Approx(0.5).epsilon(0.06));
  CHECK(min_preimage_parameter(kp) < p.sigma_pre);
  CHECK(largest_singular_value(kp.R) <= trapdoor_spectral_bound(p.n, p.w));
}

TEST_CASE("low-rank perturbation square root reproduces the covariance") {
  for (const char* name : {"toy", "desk"}) {
    const ParameterSet p = preset(name);
    ChaChaStream rng(10);
    const TrapdoorKeypair kp = trap_gen(p, rng);
    const PreimageSampler s(kp, p.sigma_pre);
    const RealMatrix root = s.covariance_sqrt();
    const RealMatrix target = s.target_covariance();
    const double scale = target.cwiseAbs().maxCoeff();
    CHECK(((root * root.transpose() - target).cwiseAbs().maxCoeff() / scale) < 1e-9);
    // Independent route: a dense Cholesky of the same covariance.
    const Eigen::LLT<Eigen::MatrixXd> llt(target);
    REQUIRE(llt.info() == Eigen::Success);
    const RealMatrix l = llt.matrixL();
    CHECK(((l * l.transpose() - root * root.transpose()).cwiseAbs().maxCoeff() / scale) < 1e-9);
  }
}

TEST_CASE("preimage sampler refuses a parameter below the keypair minimum") {
  const ParameterSet p = preset("toy");
  ChaChaStream rng(1);
  const TrapdoorKeypair kp = trap_gen(p, rng);
  CHECK_THROWS_AS(PreimageSampler(kp, min_preimage_parameter(kp) * 0.5), ParameterError);
}

TEST_CASE("sample_pre returns short preimages of arbitrary syndromes") {
  const ParameterSet p = preset("desk");
  ChaChaStream rng(14);
  const TrapdoorKeypair kp = trap_gen(p, rng);
  const PreimageSampler s(kp, p.sigma_pre);
  const long double bound = (long double)p.sigma_pre * p.sigma_pre * p.m;
  for (int i = 0; i < 100; ++i) {
    IntVector y(p.n);
    for (Eigen::Index j = 0; j < y.size(); ++j) y(j) = std::int64_t(rng.uniform_below(p.q));
    const IntVector e = s.sample(y, rng);
    CHECK(mat_vec_mod(kp.A, e) == y);
    CHECK((long double)norms(e).l2_squared <= bound);
  }
  CHECK_THROWS_AS(s.sample(IntVector::Zero(p.n + 1), rng), DimensionError);
}

TEST_CASE("sample_pre coordinates have the target spread") {
  const ParameterSet p = preset("toy");
  ChaChaStream rng(15);
  const TrapdoorKeypair kp = trap_gen(p, rng);
  const PreimageSampler s(kp, p.sigma_pre);
  IntVector y(1);
  y << 1;
  const int n = 5000;
  RealVector sum2 = RealVector::Zero(p.m);
  for (int i = 0; i < n; ++i) sum2 += s.sample(y, rng).cast<double>().array().square().matrix();
  const double expected = std::pow(parameter_to_stddev(p.sigma_pre), 2);
  for (Eigen::Index i = 0; i < p.m; ++i) CHECK(sum2(i) / n == doctest::Approx(expected).epsilon(0.08));
}

TEST_CASE("brute-force coset enumeration on a hand-sized case") {
  IntMatrix a(1, 2);
  a << 1, 1;
  IntVector y(1);
  y << 0;
  const auto table = sample_coset_bruteforce(ModMatrix::reduce(a, 3), y, 1.0, 1);
  REQUIRE(table.size() == 3);  // (-1,1), (0,0), (1,-1)
  const double w0 = 1.0, w1 = std::exp(-1.0);
  CHECK(table.at({0, 0}) == doctest::Approx(w0 / (w0 + 2 * w1)));
  CHECK(table.at({-1, 1}) == doctest::Approx(w1 / (w0 + 2 * w1)));
  CHECK_THROWS_AS(sample_coset_bruteforce(ModMatrix::reduce(IntMatrix::Ones(1, 12), 3), y, 1.0, 5),
                  EnumerationTooLarge);
}
