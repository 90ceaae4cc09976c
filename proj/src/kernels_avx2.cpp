#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

// glibc libmvec, AVX2 variants
extern "C" {
__m256d _ZGVdN4v_exp(__m256d);
__m256d _ZGVdN4v_sin(__m256d);
__m256d _ZGVdN4v_cos(__m256d);
}

namespace hp::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

void power_table_avx2(const double* lnx, std::size_t n, double sigma, double t, double* re,
                      double* im) {
  const __m256d ms = _mm256_set1_pd(-sigma);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d neg = _mm256_set1_pd(-0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d l = _mm256_loadu_pd(lnx + k);
    __m256d a = _ZGVdN4v_exp(_mm256_mul_pd(ms, l));
    __m256d ph = _mm256_mul_pd(vt, l);
    __m256d c = _ZGVdN4v_cos(ph);
    __m256d s = _ZGVdN4v_sin(ph);
    _mm256_storeu_pd(re + k, _mm256_mul_pd(a, c));
    _mm256_storeu_pd(im + k, _mm256_xor_pd(_mm256_mul_pd(a, s), neg));
  }
  if (k < n) power_table_scalar(lnx + k, n - k, sigma, t, re + k, im + k);
}

void weighted_sums_avx2(const double* const* w, std::size_t nw, const double* re,
                        const double* im, std::size_t n, std::complex<double>* out) {
  for (std::size_t k = 0; k < nw; ++k) {
    const double* wk = w[k];
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256d wv = _mm256_loadu_pd(wk + i);
      ar = _mm256_fmadd_pd(wv, _mm256_loadu_pd(re + i), ar);
      ai = _mm256_fmadd_pd(wv, _mm256_loadu_pd(im + i), ai);
    }
    double sr = hsum(ar), si = hsum(ai);
    for (; i < n; ++i) {
      sr += wk[i] * re[i];
      si += wk[i] * im[i];
    }
    out[k] = {sr, si};
  }
}

void dyadic_tail_avx2(const TailBlock& b, std::complex<double>* out) {
  const std::size_t J = b.terms;
  __m256d acc[10];
  for (auto& a : acc) a = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= b.n; i += 4) {
    const __m256d x = _mm256_loadu_pd(b.x + i);
    __m256d hr[5], hi[5];
    for (int c = 0; c < 5; ++c) {
      hr[c] = _mm256_set1_pd(b.coef[c][J - 1].real());
      hi[c] = _mm256_set1_pd(b.coef[c][J - 1].imag());
    }
    for (std::size_t j = J - 1; j-- > 0;) {
      for (int c = 0; c < 5; ++c) {
        hr[c] = _mm256_fmadd_pd(hr[c], x, _mm256_set1_pd(b.coef[c][j].real()));
        hi[c] = _mm256_fmadd_pd(hi[c], x, _mm256_set1_pd(b.coef[c][j].imag()));
      }
    }
    const __m256d pr = _mm256_loadu_pd(b.pw_re + i), pi = _mm256_loadu_pd(b.pw_im + i);
    const __m256d wr = _mm256_loadu_pd(b.wr + i), wc = _mm256_loadu_pd(b.wc + i);
    __m256d gr[5], gi[5];
    gr[0] = _mm256_mul_pd(wr, hr[0]);
    gi[0] = _mm256_mul_pd(wr, hi[0]);
    gr[1] = _mm256_fmadd_pd(wc, hr[0], hr[1]);
    gi[1] = _mm256_fmadd_pd(wc, hi[0], hi[1]);
    gr[2] = hr[2];
    gi[2] = hi[2];
    gr[3] = _mm256_mul_pd(wr, hr[3]);
    gi[3] = _mm256_mul_pd(wr, hi[3]);
    gr[4] = _mm256_fmadd_pd(wc, hr[3], hr[4]);
    gi[4] = _mm256_fmadd_pd(wc, hi[3], hi[4]);
    for (int c = 0; c < 5; ++c) {
      acc[2 * c] = _mm256_add_pd(acc[2 * c], _mm256_fmsub_pd(pr, gr[c], _mm256_mul_pd(pi, gi[c])));
      acc[2 * c + 1] =
          _mm256_add_pd(acc[2 * c + 1], _mm256_fmadd_pd(pr, gi[c], _mm256_mul_pd(pi, gr[c])));
    }
  }
  std::complex<double> rest[5] = {};
  if (i < b.n) {
    TailBlock r = b;
    r.x += i;
    r.pw_re += i;
    r.pw_im += i;
    r.wr += i;
    r.wc += i;
    r.n = b.n - i;
    dyadic_tail_scalar(r, rest);
  }
  for (int c = 0; c < 5; ++c) out[c] = {hsum(acc[2 * c]), hsum(acc[2 * c + 1])};
  for (int c = 0; c < 5; ++c) out[c] += rest[c];
}

}  // namespace hp::kernels
