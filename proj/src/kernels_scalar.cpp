#include <cmath>

#include "kernels_impl.hpp"

namespace hp::kernels {

void power_table_scalar(const double* lnx, std::size_t n, double sigma, double t, double* re,
                        double* im) {
  for (std::size_t k = 0; k < n; ++k) {
    double a = std::exp(-sigma * lnx[k]);
    double ph = t * lnx[k];
    re[k] = a * std::cos(ph);
    im[k] = -a * std::sin(ph);
  }
}

void weighted_sums_scalar(const double* const* w, std::size_t nw, const double* re,
                          const double* im, std::size_t n, std::complex<double>* out) {
  for (std::size_t k = 0; k < nw; ++k) {
    double sr = 0, si = 0;
    const double* wk = w[k];
    for (std::size_t i = 0; i < n; ++i) {
      sr += wk[i] * re[i];
      si += wk[i] * im[i];
    }
    out[k] = {sr, si};
  }
}

void dyadic_tail_scalar(const TailBlock& b, std::complex<double>* out) {
  double acc[10] = {};
  const std::size_t J = b.terms;
  for (std::size_t i = 0; i < b.n; ++i) {
    const double x = b.x[i];
    double hr[5], hi[5];
    for (int c = 0; c < 5; ++c) {
      hr[c] = b.coef[c][J - 1].real();
      hi[c] = b.coef[c][J - 1].imag();
    }
    for (std::size_t j = J - 1; j-- > 0;) {
      for (int c = 0; c < 5; ++c) {
        hr[c] = hr[c] * x + b.coef[c][j].real();
        hi[c] = hi[c] * x + b.coef[c][j].imag();
      }
    }
    const double pr = b.pw_re[i], pi = b.pw_im[i], wr = b.wr[i], wc = b.wc[i];
    double gr[5], gi[5];
    gr[0] = wr * hr[0];
    gi[0] = wr * hi[0];
    gr[1] = wc * hr[0] + hr[1];
    gi[1] = wc * hi[0] + hi[1];
    gr[2] = hr[2];
    gi[2] = hi[2];
    gr[3] = wr * hr[3];
    gi[3] = wr * hi[3];
    gr[4] = wc * hr[3] + hr[4];
    gi[4] = wc * hi[3] + hi[4];
    for (int c = 0; c < 5; ++c) {
      acc[2 * c] += pr * gr[c] - pi * gi[c];
      acc[2 * c + 1] += pr * gi[c] + pi * gr[c];
    }
  }
  for (int c = 0; c < 5; ++c) out[c] = {acc[2 * c], acc[2 * c + 1]};
}

}  // namespace hp::kernels
