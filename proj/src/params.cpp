#include "lrs/params.hpp"

#include "lrs/types.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lrs {

namespace {

constexpr double kSigmaFactor = 12.0;
constexpr double kTailCut = 12.0;
constexpr double kPreimageMargin = 1.2;
constexpr double kSecretKeyTail = 6.0;

bool mul_overflows(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  return __builtin_mul_overflow(a, b, &out);
}

}  // namespace

double gadget_sigma() { return 6.0 * std::sqrt(5.0); }

double rounding_sigma() { return 2.5; }

double trapdoor_spectral_bound(std::int64_t n, std::int64_t w) {
  const double m_bar = 5.0 * static_cast<double>(n * w);
  return std::sqrt(m_bar) + std::sqrt(static_cast<double>(n * w));
}

bool is_prime(std::int64_t x) {
  if (x < 2) {
    return false;
  }
  if (x % 2 == 0) {
    return x == 2;
  }
  for (std::int64_t f = 3; f <= x / f; f += 2) {
    if (x % f == 0) {
      return false;
    }
  }
  return true;
}

std::int64_t ceil_log2(std::int64_t x) {
  std::int64_t bits = 0;
  while ((std::int64_t{1} << bits) < x) {
    ++bits;
  }
  return bits;
}

double challenge_space_bits(std::int64_t k, std::int64_t kappa) {
  const double log_binom = std::lgamma(static_cast<double>(k) + 1) - std::lgamma(static_cast<double>(kappa) + 1) -
                           std::lgamma(static_cast<double>(k - kappa) + 1);
  return static_cast<double>(kappa) + log_binom / std::log(2.0);
}

ParameterSet derive_params(std::int64_t n, std::int64_t q, std::int64_t k, std::int64_t kappa) {
  if (n < 1 || k < 1 || kappa < 1) {
    throw ParameterError("derive_params: n, k and kappa must be positive");
  }
  if (q < 3 || !is_prime(q)) {
    throw ParameterError(fmt::format("derive_params: modulus {} is not a prime >= 3", q));
  }
  if (kappa > k) {
    throw ParameterError(fmt::format("derive_params: kappa {} exceeds k {}", kappa, k));
  }
  if (q > (std::int64_t{1} << 31)) {
    throw ParameterError("derive_params: modulus does not fit the 32-bit wire encoding");
  }

  ParameterSet p;
  p.n = n;
  p.q = q;
  p.k = k;
  p.kappa = kappa;
  p.w = ceil_log2(q);
  if (mul_overflows(6 * p.w, n)) {
    throw ParameterError("derive_params: m overflows");
  }
  p.m = 6 * n * p.w;
  if (mul_overflows(p.m, (q - 1) * (q - 1)) || p.m > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("derive_params: m*(q-1)^2 overflows 64-bit accumulation");
  }

  const double s1 = trapdoor_spectral_bound(n, p.w);
  const double s_min = gadget_sigma() * std::sqrt(1.0 + s1 * s1);
  p.sigma_pre = kPreimageMargin * s_min;
  p.d = static_cast<std::int64_t>(std::ceil(kSecretKeyTail * p.sigma_pre));
  p.sigma = kSigmaFactor * static_cast<double>(p.d) * static_cast<double>(kappa) * std::sqrt(static_cast<double>(p.m));
  p.M = std::exp(1.0 + 1.0 / 288.0);
  p.tail_cut = kTailCut;

  // Signed entries are at most tail_cut*sigma + d*kappa and must fit int64 with room to square-sum in 128 bits.
  const double max_entry = p.tail_cut * p.sigma + static_cast<double>(p.d * kappa);
  if (max_entry > 1e15) {
    throw ParameterError("derive_params: sigma too large for exact integer arithmetic");
  }
  return p;
}

std::vector<std::string> validate(const ParameterSet& p, Strictness strictness) {
  std::vector<std::string> violations;
  if (p.q < 3 || !is_prime(p.q)) {
    violations.emplace_back("q not an odd prime");
  }
  if (p.n < 1) {
    violations.emplace_back("n not positive");
  }
  if (p.k < 1 || p.kappa < 1) {
    violations.emplace_back("k or kappa not positive");
  }
  if (p.kappa > p.k) {
    violations.emplace_back("kappa exceeds k");
  }
  if (p.q >= 2 && p.w != ceil_log2(p.q)) {
    violations.emplace_back("w not ceil(log2 q)");
  }
  if (p.m != 6 * p.n * p.w) {
    violations.emplace_back("m not 6*n*w");
  }
  // m > 5 n log2 q, checked in integers: m*1000 > 5*n*ceil(1000*log2 q).
  if (p.q >= 2 && p.n >= 1) {
    const auto scaled_log = static_cast<std::int64_t>(std::ceil(1000.0 * std::log2(static_cast<double>(p.q))));
    if (p.m * 1000 <= 5 * p.n * scaled_log) {
      violations.emplace_back("m too small");
    }
  }
  if (p.m >= 1 && p.q >= 2 && mul_overflows(p.m, (p.q - 1) * (p.q - 1))) {
    violations.emplace_back("m*(q-1)^2 overflows 64-bit accumulation");
  }
  if (p.d < 1) {
    violations.emplace_back("d not positive");
  }
  if (!(p.sigma > 0)) {
    violations.emplace_back("sigma not positive");
  } else {
    const double expected = kSigmaFactor * static_cast<double>(p.d) * static_cast<double>(p.kappa) *
                            std::sqrt(static_cast<double>(p.m));
    if (std::abs(p.sigma - expected) > 1e-9 * expected) {
      violations.emplace_back("sigma not 12*d*kappa*sqrt(m)");
    }
  }
  if (std::abs(p.M - std::exp(1.0 + 1.0 / 288.0)) > 1e-12) {
    violations.emplace_back("M not exp(1+1/288)");
  }
  if (!(p.sigma_pre > 0)) {
    violations.emplace_back("sigma_pre not positive");
  } else if (p.n >= 1 && p.w >= 1) {
    const double s1 = trapdoor_spectral_bound(p.n, p.w);
    if (p.sigma_pre * p.sigma_pre <= gadget_sigma() * gadget_sigma() * (1.0 + s1 * s1) + rounding_sigma() * rounding_sigma()) {
      violations.emplace_back("sigma_pre below trapdoor minimum");
    }
    if (p.d < static_cast<std::int64_t>(std::ceil(kSecretKeyTail * p.sigma_pre))) {
      violations.emplace_back("d below 6*sigma_pre");
    }
  }
  if (p.tail_cut < 12.0) {
    violations.emplace_back("tail_cut below 12");
  }
  if (strictness == Strictness::secure && p.k >= p.kappa && p.kappa >= 1 && challenge_space_bits(p.k, p.kappa) < 100.0) {
    violations.emplace_back("challenge space below 2^100");
  }
  return violations;
}

ParameterSet preset(std::string_view name) {
  if (name == "toy") {
    return derive_params(1, 3, 4, 1);
  }
  if (name == "desk") {
    return derive_params(4, 97, 16, 4);
  }
  if (name == "paper") {
    return derive_params(64, 8191, 132, 24);
  }
  throw ParameterError(fmt::format("unknown preset '{}'", name));
}

std::vector<std::string> preset_names() { return {"toy", "desk", "paper"}; }

std::string canonical_text(const ParameterSet& p) {
  std::map<std::string, std::string> fields{
      {"M", fmt::format("{}", p.M)},
      {"d", fmt::format("{}", p.d)},
      {"k", fmt::format("{}", p.k)},
      {"kappa", fmt::format("{}", p.kappa)},
      {"m", fmt::format("{}", p.m)},
      {"n", fmt::format("{}", p.n)},
      {"q", fmt::format("{}", p.q)},
      {"sigma", fmt::format("{}", p.sigma)},
      {"sigma_pre", fmt::format("{}", p.sigma_pre)},
      {"tail_cut", fmt::format("{}", p.tail_cut)},
      {"w", fmt::format("{}", p.w)},
  };
  std::string out;
  for (const auto& [key, value] : fields) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

__int128 norm_bound_squared(const ParameterSet& p) {
  // With sigma = 12*d*kappa*sqrt(m) the bound (2*sigma*sqrt(m))^2 is the integer 576*d^2*kappa^2*m^2.
  const double expected = kSigmaFactor * static_cast<double>(p.d) * static_cast<double>(p.kappa) *
                          std::sqrt(static_cast<double>(p.m));
  if (std::abs(p.sigma - expected) <= 1e-12 * expected) {
    const __int128 dk = static_cast<__int128>(p.d) * p.kappa * p.m;
    return 576 * dk * dk;
  }
  const long double r = 4.0L * static_cast<long double>(p.sigma) * p.sigma * static_cast<long double>(p.m);
  return static_cast<__int128>(std::ceil(r));
}

}  // namespace lrs
