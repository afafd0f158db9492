// AVX2/FMA batch of the Lifshitz integrand. Four nodes per iteration with
// vector exp, expm1 and log polynomials accurate to a few ulp on the ranges
// the integrand needs; the remainder falls back to the scalar reference.

#include "casimir/integrand.hpp"

#include <immintrin.h>

namespace casimir::kernels {

namespace {

inline __m256d set(double v) { return _mm256_set1_pd(v); }

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kLog2e = 1.44269504088896338700e+00;

/// e^{-x} for x >= 0; flushes to zero beyond x = 708.
inline __m256d exp_neg(__m256d x) {
  const __m256d z = _mm256_sub_pd(_mm256_setzero_pd(), x);
  __m256d k = _mm256_round_pd(_mm256_mul_pd(z, set(kLog2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  k = _mm256_max_pd(k, set(-1022.0));
  __m256d r = _mm256_fnmadd_pd(k, set(kLn2Hi), z);
  r = _mm256_fnmadd_pd(k, set(kLn2Lo), r);
  // Taylor polynomial of degree 13 on |r| <= ln2/2.
  __m256d p = set(1.0 / 6227020800.0);
  p = _mm256_fmadd_pd(p, r, set(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, set(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, set(0.5));
  p = _mm256_fmadd_pd(p, r, set(1.0));
  p = _mm256_fmadd_pd(p, r, set(1.0));
  const __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i bits = _mm256_cvtepi32_epi64(k32);
  bits = _mm256_slli_epi64(_mm256_add_epi64(bits, _mm256_set1_epi64x(1023)), 52);
  const __m256d scaled = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  const __m256d keep = _mm256_cmp_pd(x, set(708.0), _CMP_LE_OQ);
  return _mm256_and_pd(scaled, keep);
}

/// -expm1(-x) for 0 <= x <= 0.7 (callers clamp).
inline __m256d one_minus_exp_neg(__m256d x) {
  const __m256d z = _mm256_sub_pd(_mm256_setzero_pd(), x);
  // expm1(z) = z * sum_{k=0}^{16} z^k / (k+1)!
  static constexpr double c[17] = {
      1.0,
      1.0 / 2.0,
      1.0 / 6.0,
      1.0 / 24.0,
      1.0 / 120.0,
      1.0 / 720.0,
      1.0 / 5040.0,
      1.0 / 40320.0,
      1.0 / 362880.0,
      1.0 / 3628800.0,
      1.0 / 39916800.0,
      1.0 / 479001600.0,
      1.0 / 6227020800.0,
      1.0 / 87178291200.0,
      1.0 / 1307674368000.0,
      1.0 / 20922789888000.0,
      1.0 / 355687428096000.0,
  };
  __m256d p = set(c[16]);
  for (int i = 15; i >= 0; --i) p = _mm256_fmadd_pd(p, z, set(c[i]));
  return _mm256_mul_pd(x, p);
}

/// 2 atanh(f) = ln((1 + f) / (1 - f)) for |f| <= 0.1716, 12 odd terms.
inline __m256d two_atanh(__m256d f, int terms) {
  const __m256d f2 = _mm256_mul_pd(f, f);
  __m256d s = set(2.0 / (2 * terms - 1));
  for (int k = terms - 2; k >= 0; --k) s = _mm256_fmadd_pd(s, f2, set(2.0 / (2 * k + 1)));
  return _mm256_mul_pd(s, f);
}

/// Natural log of positive normal doubles.
inline __m256d log_pos(__m256d d) {
  const __m256i bits = _mm256_castpd_si256(d);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3ff0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  // Biased exponent to double via the 2^52 magic constant.
  const __m256i ebits = _mm256_or_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x4330000000000000LL));
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(ebits), set(4503599627370496.0 + 1023.0));
  const __m256d big = _mm256_cmp_pd(m, set(1.4142135623730951), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, set(0.5)), big);
  e = _mm256_blendv_pd(e, _mm256_add_pd(e, set(1.0)), big);
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(m, set(1.0)), _mm256_add_pd(m, set(1.0)));
  const __m256d s = two_atanh(f, 12);
  return _mm256_fmadd_pd(e, set(kLn2Hi), _mm256_fmadd_pd(e, set(kLn2Lo), s));
}

template <Mode M>
inline __m256d integrand4(__m256d em1, __m256d x0, __m256d x) {
  const __m256d one = set(1.0);
  const __m256d q = _mm256_div_pd(x0, x);
  const __m256d q2 = _mm256_mul_pd(q, q);
  const __m256d a = _mm256_mul_pd(em1, q2);
  const __m256d s = _mm256_sqrt_pd(_mm256_add_pd(one, a));
  __m256d r, omr2;
  if constexpr (M == Mode::TE) {
    const __m256d u = _mm256_add_pd(one, s);
    const __m256d d = _mm256_mul_pd(u, u);
    r = _mm256_div_pd(a, d);
    omr2 = _mm256_div_pd(_mm256_mul_pd(set(4.0), s), d);
  } else {
    const __m256d eps = _mm256_add_pd(one, em1);
    const __m256d u = _mm256_add_pd(eps, s);
    const __m256d d = _mm256_mul_pd(u, u);
    const __m256d num = _mm256_mul_pd(em1, _mm256_sub_pd(_mm256_add_pd(set(2.0), em1), q2));
    r = _mm256_div_pd(num, d);
    omr2 = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(set(4.0), eps), s), d);
  }
  const __m256d e = exp_neg(x);
  const __m256d p = _mm256_mul_pd(_mm256_mul_pd(r, r), e);

  // p < 1/4: log1p(-p) through 2 atanh(-p / (2 - p)).
  const __m256d f = _mm256_div_pd(_mm256_sub_pd(_mm256_setzero_pd(), p), _mm256_sub_pd(set(2.0), p));
  const __m256d small = two_atanh(f, 11);

  // Otherwise the log of 1 - p, or of -expm1(-x) + e (1 - r^2) once p >= 1/2.
  const __m256d xs = _mm256_min_pd(x, set(0.7));
  const __m256d dd = _mm256_fmadd_pd(e, omr2, one_minus_exp_neg(xs));
  const __m256d high = _mm256_cmp_pd(p, set(0.5), _CMP_GE_OQ);
  const __m256d z = _mm256_blendv_pd(_mm256_sub_pd(one, p), dd, high);
  const __m256d large = log_pos(z);

  const __m256d use_small = _mm256_cmp_pd(p, set(0.25), _CMP_LT_OQ);
  const __m256d l = _mm256_blendv_pd(large, small, use_small);
  return _mm256_mul_pd(x, l);
}

template <Mode M>
double sum_impl(double em1, double x0, const double* y, const double* w, std::size_t n) {
  const __m256d vem1 = set(em1);
  const __m256d vx0 = set(x0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_add_pd(vx0, _mm256_loadu_pd(y + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), integrand4<M>(vem1, vx0, x), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += w[i] * integrand<double>(M, em1, x0, x0 + y[i]);
  return total;
}

}  // namespace

double weighted_sum_avx2(Mode mode, double em1, double x0, const double* y, const double* w,
                         std::size_t n) {
  return mode == Mode::TE ? sum_impl<Mode::TE>(em1, x0, y, w, n)
                          : sum_impl<Mode::TM>(em1, x0, y, w, n);
}

}  // namespace casimir::kernels
