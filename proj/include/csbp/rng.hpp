#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

namespace csbp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seeding. Streams for parallel work are derived
// from (seed, stream_index) so results never depend on scheduling or worker
// count. All distributions below are implemented here rather than taken from
// <random> because the standard does not pin their bit streams across
// implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static RngStream for_path(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t sm = k;
    std::uint64_t mixed = seed ^ splitmix64(sm);
    return RngStream(mixed == 0 ? 0x6a09e667f3bcc909ULL : mixed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on (0,1), strictly inside so logs and negative powers stay
  // finite; 52-bit resolution so vector lanes can rebuild the same value with
  // exponent-field arithmetic
  double next_double() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // standard normal, Box-Muller; consumes exactly two uniforms
  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // Poisson with arbitrary mean: product-of-uniforms inversion for small
  // means, Hormann's PTRD transformed rejection for large ones.
  long next_poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    if (mean < 10.0) {
      const double limit = std::exp(-mean);
      long k = 0;
      double prod = next_double();
      while (prod > limit) {
        ++k;
        prod *= next_double();
      }
      return k;
    }
    const double smu = std::sqrt(mean);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mu = std::log(mean);
    for (;;) {
      double u = next_double() - 0.5;
      double v = next_double();
      double us = 0.5 - std::fabs(u);
      double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
      if (kf < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          kf * log_mu - mean - std::lgamma(kf + 1.0))
        return static_cast<long>(kf);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

namespace detail {

// x^c for x in (0,1] and c in [-1,0): exp2(c*log2 x) with a bit-level
// exponent/mantissa split, log2 through an atanh series and exp2 through a
// short Taylor polynomial. The jump sampler draws billions of Pareto variates
// per acceptance run on one core; libm pow is the bottleneck there. Relative
// error is a few 1e-12 (pinned by a unit test against std::pow). The AVX2
// kernel in kernels.cpp transliterates this exact operation sequence, so the
// two variants stay bit-identical.
inline double fast_pow_unit(double x, double c) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  const double m0 =
      std::bit_cast<double>((bits & 0x000fffffffffffffULL) | 0x3ff0000000000000ULL);
  // renormalize the mantissa into (sqrt(1/2), sqrt 2]
  const bool big = m0 > 1.4142135623730951;
  const double m = big ? m0 * 0.5 : m0;
  const double e =
      static_cast<double>(static_cast<int>(bits >> 52) - 1023 + (big ? 1 : 0));
  // log2(m) = (2/ln 2) atanh t, |t| <= 0.1716
  const double t = (m - 1.0) / (m + 1.0);
  const double t2 = t * t;
  double q = 1.0 / 13.0;
  q = 1.0 / 11.0 + t2 * q;
  q = 1.0 / 9.0 + t2 * q;
  q = 1.0 / 7.0 + t2 * q;
  q = 1.0 / 5.0 + t2 * q;
  q = 1.0 / 3.0 + t2 * q;
  q = 1.0 + t2 * q;
  const double log2x = e + 2.8853900817779268 * (t * q);

  const double w = c * log2x;  // in [0, ~54] for x from the RNG and c in [-1,0)
  const double kd = std::floor(w + 0.5);
  const double f = (w - kd) * 0.6931471805599453;  // |f| <= 0.347
  double p = 1.0 / 3628800.0;
  p = 1.0 / 362880.0 + f * p;
  p = 1.0 / 40320.0 + f * p;
  p = 1.0 / 5040.0 + f * p;
  p = 1.0 / 720.0 + f * p;
  p = 1.0 / 120.0 + f * p;
  p = 1.0 / 24.0 + f * p;
  p = 1.0 / 6.0 + f * p;
  p = 0.5 + f * p;
  p = 1.0 + f * p;
  p = 1.0 + f * p;
  // 2^k assembled in the exponent field; k stays well inside [0, 54]
  const double two_k = std::bit_cast<double>(
      (static_cast<std::uint64_t>(static_cast<long>(kd)) + 1023) << 52);
  return p * two_k;
}

}  // namespace detail
}  // namespace csbp
