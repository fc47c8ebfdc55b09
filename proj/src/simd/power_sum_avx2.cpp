// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "fracsph/simd/power_sum.hpp"

namespace fracsph::simd::detail {

namespace {

// Cephes log/exp rational approximations, four lanes at a time.

inline __m256d poly5(__m256d x, const double* c) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int k = 1; k <= 5; ++k) r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c[k]));
  return r;
}

/// log(x) for normal positive x.
inline __m256d log_pd(__m256d x) {
  static constexpr double kP[6] = {1.01875663804580931796E-4, 4.97494994976747001425E-1,
                                   4.70579119878881725854E0,  1.44989225341610930846E1,
                                   1.79368678507819816313E1,  7.70838733755885391666E0};
  // Leading coefficient 1 is implicit.
  static constexpr double kQ[6] = {1.0,
                                   1.12873587189167450590E1,
                                   4.52279145837532221105E1,
                                   8.29875266912776603211E1,
                                   7.11544750618563894466E1,
                                   2.31251620126765340583E1};

  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i exponent_bits = _mm256_srli_epi64(bits, 52);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(exponent_bits, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  const __m256i mantissa_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_exponent = _mm256_set1_epi64x(0x3FE0000000000000LL);
  const __m256d m =
      _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mantissa_mask), half_exponent));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d below = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, one));
  const __m256d f = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(below, m)), one);

  const __m256d z = _mm256_mul_pd(f, f);
  const __m256d ratio = _mm256_div_pd(poly5(f, kP), poly5(f, kQ));
  __m256d y = _mm256_mul_pd(f, _mm256_mul_pd(z, ratio));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(f, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

/// exp(x); lanes below the underflow threshold return 0.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_floor_pd(
      _mm256_fmadd_pd(x, _mm256_set1_pd(1.4426950408889634073599), _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  const __m256i n64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  const __m256i scale_bits =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  r = _mm256_mul_pd(r, _mm256_castsi256_pd(scale_bits));
  return _mm256_andnot_pd(underflow, r);
}

}  // namespace

double power_sum_avx2(double x, const double* pos, const double* coef, std::size_t n, double p) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d tiny = _mm256_set1_pd(kTinyBase);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();

  auto lane_terms = [&](const double* ps, const double* cs) {
    const __m256d d = _mm256_sub_pd(vx, _mm256_loadu_pd(ps));
    const __m256d keep = _mm256_cmp_pd(d, tiny, _CMP_GE_OQ);
    const __m256d safe = _mm256_max_pd(d, tiny);
    const __m256d powd = exp_pd(_mm256_mul_pd(vp, log_pd(safe)));
    return _mm256_and_pd(keep, _mm256_mul_pd(_mm256_loadu_pd(cs), powd));
  };

  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    acc0 = _mm256_add_pd(acc0, lane_terms(pos + j, coef + j));
    acc1 = _mm256_add_pd(acc1, lane_terms(pos + j + 4, coef + j + 4));
  }
  for (; j + 4 <= n; j += 4) acc0 = _mm256_add_pd(acc0, lane_terms(pos + j, coef + j));

  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  return sum + power_sum_scalar(x, pos + j, coef + j, n - j, p);
}

}  // namespace fracsph::simd::detail
