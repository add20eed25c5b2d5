#include "csbp/kernels.hpp"

#include <cmath>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

namespace csbp::kernels {

namespace {

// shared accumulation layout: groups of four into fixed lanes, then the
// remainder appended serially; every variant follows it so outputs compare
// exactly
template <class Pow>
double grouped_sum(RngStream& rng, long k, double c, Pow&& pw) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  long i = 0;
  for (; i + 4 <= k; i += 4) {
    double u0 = rng.next_double();
    double u1 = rng.next_double();
    double u2 = rng.next_double();
    double u3 = rng.next_double();
    s0 += pw(u0);
    s1 += pw(u1);
    s2 += pw(u2);
    s3 += pw(u3);
  }
  double total = (s0 + s1) + (s2 + s3);
  for (; i < k; ++i) total += pw(rng.next_double());
  return total;
}

}  // namespace

double pareto_power_sum_ref(RngStream& rng, long k, double c) {
  return grouped_sum(rng, k, c, [&](double u) { return std::pow(u, c); });
}

double pareto_power_sum_scalar(RngStream& rng, long k, double c) {
  return grouped_sum(rng, k, c, [&](double u) { return detail::fast_pow_unit(u, c); });
}

#if defined(__x86_64__)

bool avx2_available() {
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
}

// Vector transliteration of fast_pow_unit. Deliberately mul/add only (no
// FMA contraction) so each lane reproduces the scalar path bit for bit; the
// equivalence test asserts exact equality of the two variants.
__attribute__((target("avx2"))) static double pareto_sum_avx2_groups(
    RngStream& rng, long groups, double c) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256i exp_bias = _mm256_set1_epi64x(1023);
  const __m256i magic_i = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
  const __m256d magic_d = _mm256_castsi256_pd(magic_i);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d scale52 = _mm256_set1_pd(0x1.0p-52);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
  const __m256d two_over_ln2 = _mm256_set1_pd(2.8853900817779268);
  const __m256d ln2 = _mm256_set1_pd(0.6931471805599453);

  __m256d acc = _mm256_setzero_pd();
  for (long g = 0; g < groups; ++g) {
    std::uint64_t r0 = rng.next_u64();
    std::uint64_t r1 = rng.next_u64();
    std::uint64_t r2 = rng.next_u64();
    std::uint64_t r3 = rng.next_u64();
    __m256i r = _mm256_set_epi64x(static_cast<long long>(r3),
                                  static_cast<long long>(r2),
                                  static_cast<long long>(r1),
                                  static_cast<long long>(r0));

    // u = ((r >> 12) + 0.5) * 2^-52, exactly as RngStream::next_double
    __m256i v52 = _mm256_srli_epi64(r, 12);
    __m256d vd = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v52, magic_i)), magic_d);
    __m256d u = _mm256_mul_pd(_mm256_add_pd(vd, half), scale52);

    // exponent and mantissa fields of u, mantissa renormalized branchlessly
    __m256i bits = _mm256_castpd_si256(u);
    __m256i ebits = _mm256_srli_epi64(bits, 52);  // u > 0, no sign bit
    __m256d e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(ebits, magic_i)),
        _mm256_castsi256_pd(_mm256_add_epi64(magic_i, exp_bias)));
    __m256d m0 = _mm256_castsi256_pd(
        _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    __m256d big = _mm256_cmp_pd(m0, sqrt2, _CMP_GT_OQ);
    __m256d m = _mm256_blendv_pd(m0, _mm256_mul_pd(m0, half), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, one));

    // log2(m) = (2/ln2) atanh t with t = (m-1)/(m+1)
    __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d t2 = _mm256_mul_pd(t, t);
    __m256d q = _mm256_set1_pd(1.0 / 13.0);
    q = _mm256_add_pd(_mm256_set1_pd(1.0 / 11.0), _mm256_mul_pd(t2, q));
    q = _mm256_add_pd(_mm256_set1_pd(1.0 / 9.0), _mm256_mul_pd(t2, q));
    q = _mm256_add_pd(_mm256_set1_pd(1.0 / 7.0), _mm256_mul_pd(t2, q));
    q = _mm256_add_pd(_mm256_set1_pd(1.0 / 5.0), _mm256_mul_pd(t2, q));
    q = _mm256_add_pd(_mm256_set1_pd(1.0 / 3.0), _mm256_mul_pd(t2, q));
    q = _mm256_add_pd(one, _mm256_mul_pd(t2, q));
    __m256d log2x = _mm256_add_pd(
        e, _mm256_mul_pd(two_over_ln2, _mm256_mul_pd(t, q)));

    __m256d w = _mm256_mul_pd(vc, log2x);
    __m256d kd = _mm256_floor_pd(_mm256_add_pd(w, half));
    __m256d f = _mm256_mul_pd(_mm256_sub_pd(w, kd), ln2);
    __m256d p = _mm256_set1_pd(1.0 / 3628800.0);
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 362880.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 40320.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 5040.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 720.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 120.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 24.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(_mm256_set1_pd(1.0 / 6.0), _mm256_mul_pd(f, p));
    p = _mm256_add_pd(half, _mm256_mul_pd(f, p));
    p = _mm256_add_pd(one, _mm256_mul_pd(f, p));
    p = _mm256_add_pd(one, _mm256_mul_pd(f, p));

    // 2^k assembled in the exponent field (k in [0,54])
    __m256i ki = _mm256_and_si256(
        _mm256_castpd_si256(_mm256_add_pd(kd, magic_d)), mant_mask);
    __m256d two_k = _mm256_castsi256_pd(
        _mm256_slli_epi64(_mm256_add_epi64(ki, exp_bias), 52));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(p, two_k));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double pareto_power_sum_avx2(RngStream& rng, long k, double c) {
  double total = pareto_sum_avx2_groups(rng, k / 4, c);
  for (long i = 0; i < k % 4; ++i)
    total += detail::fast_pow_unit(rng.next_double(), c);
  return total;
}

#endif  // __x86_64__

double pareto_power_sum(RngStream& rng, long k, double c) {
#if defined(__x86_64__)
  if (avx2_available()) return pareto_power_sum_avx2(rng, k, c);
#endif
  return pareto_power_sum_scalar(rng, k, c);
}

}  // namespace csbp::kernels
