#pragma once

#include <complex>
#include <cstddef>

namespace hp::kernels {

enum class Isa { scalar, avx2, neon };

bool available(Isa isa);
Isa best();
Isa active();
void set_active(Isa isa);  // throws if unavailable
const char* name(Isa isa);

// re + i*im = exp(-(sigma + i t) * lnx[k])
void power_table(Isa isa, const double* lnx, std::size_t n, double sigma, double t, double* re,
                 double* im);

// out[k] = sum_i w[k][i] * (re[i] + i*im[i])
void weighted_sums(Isa isa, const double* const* w, std::size_t nw, const double* re,
                   const double* im, std::size_t n, std::complex<double>* out);

// Block evaluation of the dyadic tail. With h_c(x) = sum_j coef[c][j] x^j:
//   out[0] = sum pw * wr * h_0        out[3] = sum pw * wr * h_3
//   out[1] = sum pw * (wc * h_0 + h_1)  out[4] = sum pw * (wc * h_3 + h_4)
//   out[2] = sum pw * h_2
struct TailBlock {
  const double* x = nullptr;  // 1/P
  const double* pw_re = nullptr;
  const double* pw_im = nullptr;
  const double* wr = nullptr;
  const double* wc = nullptr;
  std::size_t n = 0;
  const std::complex<double>* coef[5] = {};
  std::size_t terms = 0;
};
void dyadic_tail(Isa isa, const TailBlock& b, std::complex<double>* out);

}  // namespace hp::kernels
