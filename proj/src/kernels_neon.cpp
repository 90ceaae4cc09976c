#include <arm_neon.h>

#include <cmath>

#include "kernels_impl.hpp"

// No vector transcendentals in the base toolchain; the power table stays scalar
// and only the reductions and the Horner block use NEON.

namespace hp::kernels {

void power_table_neon(const double* lnx, std::size_t n, double sigma, double t, double* re,
                      double* im) {
  power_table_scalar(lnx, n, sigma, t, re, im);
}

void weighted_sums_neon(const double* const* w, std::size_t nw, const double* re,
                        const double* im, std::size_t n, std::complex<double>* out) {
  for (std::size_t k = 0; k < nw; ++k) {
    const double* wk = w[k];
    float64x2_t ar = vdupq_n_f64(0), ai = vdupq_n_f64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      float64x2_t wv = vld1q_f64(wk + i);
      ar = vfmaq_f64(ar, wv, vld1q_f64(re + i));
      ai = vfmaq_f64(ai, wv, vld1q_f64(im + i));
    }
    double sr = vaddvq_f64(ar), si = vaddvq_f64(ai);
    for (; i < n; ++i) {
      sr += wk[i] * re[i];
      si += wk[i] * im[i];
    }
    out[k] = {sr, si};
  }
}

void dyadic_tail_neon(const TailBlock& b, std::complex<double>* out) {
  const std::size_t J = b.terms;
  float64x2_t acc[10];
  for (auto& a : acc) a = vdupq_n_f64(0);
  std::size_t i = 0;
  for (; i + 2 <= b.n; i += 2) {
    const float64x2_t x = vld1q_f64(b.x + i);
    float64x2_t hr[5], hi[5];
    for (int c = 0; c < 5; ++c) {
      hr[c] = vdupq_n_f64(b.coef[c][J - 1].real());
      hi[c] = vdupq_n_f64(b.coef[c][J - 1].imag());
    }
    for (std::size_t j = J - 1; j-- > 0;) {
      for (int c = 0; c < 5; ++c) {
        hr[c] = vfmaq_f64(vdupq_n_f64(b.coef[c][j].real()), hr[c], x);
        hi[c] = vfmaq_f64(vdupq_n_f64(b.coef[c][j].imag()), hi[c], x);
      }
    }
    const float64x2_t pr = vld1q_f64(b.pw_re + i), pi = vld1q_f64(b.pw_im + i);
    const float64x2_t wr = vld1q_f64(b.wr + i), wc = vld1q_f64(b.wc + i);
    float64x2_t gr[5], gi[5];
    gr[0] = vmulq_f64(wr, hr[0]);
    gi[0] = vmulq_f64(wr, hi[0]);
    gr[1] = vfmaq_f64(hr[1], wc, hr[0]);
    gi[1] = vfmaq_f64(hi[1], wc, hi[0]);
    gr[2] = hr[2];
    gi[2] = hi[2];
    gr[3] = vmulq_f64(wr, hr[3]);
    gi[3] = vmulq_f64(wr, hi[3]);
    gr[4] = vfmaq_f64(hr[4], wc, hr[3]);
    gi[4] = vfmaq_f64(hi[4], wc, hi[3]);
    for (int c = 0; c < 5; ++c) {
      acc[2 * c] = vaddq_f64(acc[2 * c], vfmsq_f64(vmulq_f64(pr, gr[c]), pi, gi[c]));
      acc[2 * c + 1] = vaddq_f64(acc[2 * c + 1], vfmaq_f64(vmulq_f64(pr, gi[c]), pi, gr[c]));
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
  for (int c = 0; c < 5; ++c)
    out[c] = std::complex<double>(vaddvq_f64(acc[2 * c]), vaddvq_f64(acc[2 * c + 1])) + rest[c];
}

}  // namespace hp::kernels
