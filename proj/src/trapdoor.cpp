#include "lrs/trapdoor.hpp"

#include "lrs/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace lrs {

namespace {

constexpr int kMaxTrapGenAttempts = 100;
constexpr int kMaxPreimageAttempts = 1000;

}  // namespace

double parameter_to_stddev(double s) { return s / std::sqrt(2.0 * std::numbers::pi); }

GadgetMatrix::GadgetMatrix(std::int64_t n, std::int64_t w, std::int64_t q) : n_(n), w_(w), q_(q) {
  if (n < 1 || w < 1 || q < 2 || q > (std::int64_t{1} << w)) {
    throw ParameterError("GadgetMatrix: need n, w >= 1 and 2 <= q <= 2^w");
  }
  // Columns 2e_i - e_{i+1}, then the binary digits of q.
  basis_ = IntMatrix::Zero(w, w);
  for (std::int64_t i = 0; i + 1 < w; ++i) {
    basis_(i, i) = 2;
    basis_(i + 1, i) = -1;
  }
  for (std::int64_t i = 0; i < w; ++i) {
    basis_(i, w - 1) = (q >> i) & 1;
  }

  const RealMatrix b = basis_.cast<double>();
  gs_ = b;
  for (std::int64_t i = 0; i < w; ++i) {
    for (std::int64_t j = 0; j < i; ++j) {
      const double mu = b.col(i).dot(gs_.col(j)) / gs_.col(j).squaredNorm();
      gs_.col(i) -= mu * gs_.col(j);
    }
  }
  gs_norms_ = gs_.colwise().norm().transpose();
}

IntVector GadgetMatrix::apply(const IntVector& x) const {
  if (x.size() != n_ * w_) {
    throw DimensionError("GadgetMatrix::apply: length must be n*w");
  }
  IntVector out(n_);
  for (std::int64_t i = 0; i < n_; ++i) {
    std::int64_t acc = 0;
    for (std::int64_t j = 0; j < w_; ++j) {
      acc = mod_q(acc + mod_q(x(i * w_ + j), q_) * mod_q(std::int64_t{1} << j, q_), q_);
    }
    out(i) = acc;
  }
  return out;
}

IntVector GadgetMatrix::decompose(const IntVector& t) const {
  if (t.size() != n_) {
    throw DimensionError("GadgetMatrix::decompose: length must be n");
  }
  IntVector out(n_ * w_);
  for (std::int64_t i = 0; i < n_; ++i) {
    const std::int64_t r = mod_q(t(i), q_);
    for (std::int64_t j = 0; j < w_; ++j) {
      out(i * w_ + j) = (r >> j) & 1;
    }
  }
  return out;
}

ModMatrix GadgetMatrix::dense() const {
  ModMatrix g(n_, n_ * w_, q_);
  for (std::int64_t i = 0; i < n_; ++i) {
    for (std::int64_t j = 0; j < w_; ++j) {
      g.set(i, i * w_ + j, std::int64_t{1} << j);
    }
  }
  return g;
}

IntVector gadget_preimage(const GadgetMatrix& g, const IntVector& t, double sigma_g, const IntegerRounder& round) {
  const std::int64_t w = g.w_;
  const IntVector digits = g.decompose(t);
  IntVector out(g.n_ * w);
  for (std::int64_t block = 0; block < g.n_; ++block) {
    // Nearest plane from the last basis vector down; x stays in the coset digits + lattice.
    IntVector x = digits.segment(block * w, w);
    for (std::int64_t i = w - 1; i >= 0; --i) {
      const double norm = g.gs_norms_(i);
      const double center = x.cast<double>().dot(g.gs_.col(i)) / (norm * norm);
      const std::int64_t z = round(center, parameter_to_stddev(sigma_g / norm));
      x -= z * g.basis_.col(i);
    }
    out.segment(block * w, w) = x;
  }
  return out;
}

IntVector gadget_preimage(const GadgetMatrix& g, const IntVector& t, double sigma_g, RandomSource& rng) {
  return gadget_preimage(g, t, sigma_g,
                         [&rng](double center, double stddev) { return sample_z_centered(center, stddev, rng); });
}

double largest_singular_value(const IntMatrix& r, int iterations) {
  const RealMatrix rd = r.cast<double>();
  const RealMatrix gram = rd.transpose() * rd;
  RealVector v = RealVector::Ones(gram.cols()).normalized();
  double lambda = 0;
  for (int it = 0; it < iterations; ++it) {
    RealVector next = gram * v;
    const double norm = next.norm();
    if (norm == 0) {
      return 0;
    }
    v = next / norm;
    lambda = norm;
  }
  return std::sqrt(lambda);
}

double min_preimage_parameter(const TrapdoorKeypair& kp) {
  const double s1 = largest_singular_value(kp.R);
  return gadget_sigma() * std::sqrt(1.0 + s1 * s1);
}

namespace {

bool admissible(double sigma_pre, double s1) {
  const double r = rounding_sigma();
  const double sg = gadget_sigma();
  return sigma_pre * sigma_pre - 2.0 * std::numbers::pi * r * r > sg * sg * (1.0 + s1 * s1);
}

}  // namespace

TrapdoorKeypair trap_gen(const ParameterSet& params, RandomSource& rng) {
  const std::int64_t n = params.n;
  const std::int64_t nw = params.n * params.w;
  const std::int64_t m_bar = params.m_bar();
  if (m_bar != 5 * nw) {
    throw ParameterError("trap_gen: parameters must satisfy m = 6*n*w");
  }
  const GadgetMatrix gadget(n, params.w, params.q);

  IntMatrix a_bar(n, m_bar);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < m_bar; ++j) {
      a_bar(i, j) = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(params.q)));
    }
  }

  for (int attempt = 0; attempt < kMaxTrapGenAttempts; ++attempt) {
    IntMatrix r(m_bar, nw);
    for (std::int64_t i = 0; i < m_bar; ++i) {
      for (std::int64_t j = 0; j < nw; ++j) {
        const std::uint64_t bits = rng.next_u64();
        r(i, j) = static_cast<std::int64_t>(bits & 1) - static_cast<std::int64_t>((bits >> 1) & 1);
      }
    }
    if (!admissible(params.sigma_pre, largest_singular_value(r))) {
      continue;
    }
    const ModMatrix a_bar_mod = ModMatrix::reduce(a_bar, params.q);
    const ModMatrix ar = mat_mul_mod(a_bar_mod, r);
    IntMatrix joined(n, params.m);
    joined.leftCols(m_bar) = a_bar;
    joined.rightCols(nw) = gadget.dense().residues() - ar.residues();
    return TrapdoorKeypair{ModMatrix::reduce(joined, params.q), std::move(r), params};
  }
  throw RetryBudgetExhausted("trap_gen: no admissible trapdoor found");
}

PreimageSampler::PreimageSampler(const TrapdoorKeypair& kp, double sigma_pre)
    : kp_(kp), sigma_pre_(sigma_pre), gadget_(kp.params.n, kp.params.w, kp.params.q) {
  const std::int64_t nw = kp.R.cols();
  const std::int64_t m = kp.A.cols();
  if (kp.R.rows() + nw != m) {
    throw DimensionError("PreimageSampler: trapdoor shape does not match A");
  }
  // B = [R; I]; B B^T = U diag(lambda) U^T with U = B V diag(lambda)^(-1/2).
  RealMatrix b(m, nw);
  b.topRows(kp.R.rows()) = kp.R.cast<double>();
  b.bottomRows(nw) = RealMatrix::Identity(nw, nw);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.transpose() * b);
  if (eig.info() != Eigen::Success) {
    throw Error("PreimageSampler: eigendecomposition failed");
  }
  const RealVector lambda = eig.eigenvalues();
  const double std_pre = parameter_to_stddev(sigma_pre);
  const double std_g = parameter_to_stddev(gadget_sigma());
  const double r = rounding_sigma();
  const double a2 = std_pre * std_pre - r * r;
  const double worst = a2 - std_g * std_g * lambda.maxCoeff();
  if (!(a2 > 0) || !(worst > 0)) {
    throw ParameterError(fmt::format("sample_pre: sigma_pre {} below the keypair minimum {}", sigma_pre,
                                     gadget_sigma() * std::sqrt(lambda.maxCoeff())));
  }
  base_ = std::sqrt(a2);
  basis_ = b * eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
  shrink_.resize(nw);
  for (std::int64_t i = 0; i < nw; ++i) {
    shrink_(i) = std::sqrt(a2 - std_g * std_g * lambda(i)) - base_;
  }
}

RealVector PreimageSampler::continuous_perturbation(RandomSource& rng) const {
  RealVector g(kp_.A.cols());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    g(i) = rng.standard_normal();
  }
  const RealVector proj = basis_.transpose() * g;
  return base_ * g + basis_ * shrink_.cwiseProduct(proj);
}

RealMatrix PreimageSampler::covariance_sqrt() const {
  const Eigen::Index m = kp_.A.cols();
  return base_ * RealMatrix::Identity(m, m) + basis_ * shrink_.asDiagonal() * basis_.transpose();
}

RealMatrix PreimageSampler::target_covariance() const {
  const Eigen::Index m = kp_.A.cols();
  const Eigen::Index nw = kp_.R.cols();
  RealMatrix b(m, nw);
  b.topRows(kp_.R.rows()) = kp_.R.cast<double>();
  b.bottomRows(nw) = RealMatrix::Identity(nw, nw);
  const double std_g = parameter_to_stddev(gadget_sigma());
  return base_ * base_ * RealMatrix::Identity(m, m) - std_g * std_g * b * b.transpose();
}

IntVector PreimageSampler::sample(const IntVector& y, RandomSource& rng) const {
  const std::int64_t n = kp_.params.n;
  const std::int64_t m = kp_.A.cols();
  const std::int64_t nw = kp_.R.cols();
  if (y.size() != n) {
    throw DimensionError("sample_pre: syndrome length must be n");
  }
  const long double bound = static_cast<long double>(sigma_pre_) * sigma_pre_ * static_cast<long double>(m);
  for (int attempt = 0; attempt < kMaxPreimageAttempts; ++attempt) {
    const RealVector x = continuous_perturbation(rng);
    IntVector p(m);
    for (std::int64_t i = 0; i < m; ++i) {
      p(i) = sample_z_centered(x(i), rounding_sigma(), rng);
    }
    const IntVector target = y - mat_vec_mod(kp_.A, p);
    const IntVector z = gadget_preimage(gadget_, target, gadget_sigma(), rng);
    IntVector e = p;
    e.head(kp_.R.rows()) += kp_.R * z;
    e.tail(nw) += z;
    if (static_cast<long double>(norms(e).l2_squared) <= bound) {
      return e;
    }
  }
  throw RetryBudgetExhausted("sample_pre: norm bound never met");
}

IntVector sample_pre(const TrapdoorKeypair& kp, double sigma_pre, const IntVector& y, RandomSource& rng) {
  return PreimageSampler(kp, sigma_pre).sample(y, rng);
}

std::map<std::vector<std::int64_t>, double> sample_coset_bruteforce(const ModMatrix& a, const IntVector& y, double sigma,
                                                                    std::int64_t radius) {
  const std::int64_t m = a.cols();
  const double side = 2.0 * static_cast<double>(radius) + 1.0;
  if (radius < 0 || std::pow(side, static_cast<double>(m)) > 1e7) {
    throw EnumerationTooLarge("sample_coset_bruteforce: (2*radius+1)^m exceeds 1e7");
  }
  if (y.size() != a.rows()) {
    throw DimensionError("sample_coset_bruteforce: syndrome length must equal rows");
  }
  const IntVector target = ModMatrix::reduce(y, a.modulus()).residues();
  std::map<std::vector<std::int64_t>, double> table;
  std::vector<std::int64_t> e(static_cast<std::size_t>(m), -radius);
  IntVector ev(m);
  double total = 0;
  for (;;) {
    for (std::int64_t i = 0; i < m; ++i) {
      ev(i) = e[static_cast<std::size_t>(i)];
    }
    if (mat_vec_mod(a, ev) == target) {
      const double weight = std::exp(-static_cast<double>(ev.squaredNorm()) / (2.0 * sigma * sigma));
      table[e] = weight;
      total += weight;
    }
    std::int64_t pos = m - 1;
    while (pos >= 0 && e[static_cast<std::size_t>(pos)] == radius) {
      e[static_cast<std::size_t>(pos)] = -radius;
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++e[static_cast<std::size_t>(pos)];
  }
  for (auto& [point, weight] : table) {
    weight /= total;
  }
  return table;
}

}  // namespace lrs
