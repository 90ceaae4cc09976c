#include <cmath>
#include <numbers>
#include <vector>

#include "hp/dirichlet.hpp"
#include "hp/kernels.hpp"

namespace hp {

namespace {

// B_2, B_4, ..., B_30
constexpr double kBern[] = {1.0 / 6,
                            -1.0 / 30,
                            1.0 / 42,
                            -1.0 / 30,
                            5.0 / 66,
                            -691.0 / 2730,
                            7.0 / 6,
                            -3617.0 / 510,
                            43867.0 / 798,
                            -174611.0 / 330,
                            854513.0 / 138,
                            -236364091.0 / 2730,
                            8553103.0 / 6,
                            -23749461029.0 / 870,
                            8615841276005.0 / 14322};

// Borwein's accelerated eta series. Good for small |t|; the alternating sum
// loses about |t|*pi/2/ln10 digits, so callers keep |t| small.
bool borwein(cplx s, Estimate& out) {
  const int n = 48;
  const double t = std::abs(s.imag());
  const cplx den = 1.0 - std::pow(2.0, 1.0 - s);
  if (std::abs(den) < 0.05) return false;
  std::vector<double> d(n + 1);
  double term = 1.0 / n, acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1));
    acc += term;
    d[i] = n * acc;
  }
  cplx sum = 0;
  double mag = 0;
  for (int k = 0; k < n; ++k) {
    cplx a = (d[k] - d[n]) * std::exp(-s * std::log(k + 1.0));
    sum += (k % 2 ? -a : a);
    mag += std::abs(a);
  }
  out.value = -sum / (d[n] * den);
  const double trunc = 3.0 * (1 + 2 * t) * std::exp(t * std::numbers::pi / 2) /
                       (std::pow(3 + std::sqrt(8.0), n) * std::abs(den));
  const double round = 8 * 2.2e-16 * mag / (d[n] * std::abs(den));
  out.error = trunc + round;
  return out.error < 1e-12;
}

Estimate euler_maclaurin(cplx s) {
  const std::size_t N = 16 + static_cast<std::size_t>(std::ceil(std::abs(s)));
  const int M = 14;
  std::vector<double> lnx(N - 1), re(N - 1), im(N - 1);
  for (std::size_t i = 0; i + 1 < N; ++i) lnx[i] = std::log(double(i + 1));
  auto isa = kernels::active();
  kernels::power_table(isa, lnx.data(), N - 1, s.real(), s.imag(), re.data(), im.data());
  double sr = 0, si = 0, mag = 0;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    sr += re[i];
    si += im[i];
    mag += std::hypot(re[i], im[i]);
  }
  const double lnN = std::log(double(N));
  const cplx Ns = std::exp(-s * lnN);  // N^{-s}
  cplx v = cplx(sr, si) + double(N) * Ns / (s - 1.0) + 0.5 * Ns;
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  cplx poch = s;
  cplx pw = Ns / double(N);
  double fact = 2;
  cplx last = 0;
  for (int k = 1; k <= M + 1; ++k) {
    cplx term = kBern[k - 1] / fact * poch * pw;
    if (k <= M)
      v += term;
    else
      last = term;
    poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
    pw /= double(N) * double(N);
    fact *= double(2 * k + 1) * double(2 * k + 2);
  }
  return {v, std::abs(last) + 4 * 2.2e-16 * (mag + std::abs(v))};
}

}  // namespace

Estimate riemann_zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-12) throw DomainError("riemann_zeta: pole at s = 1");
  Estimate e;
  if (std::abs(s.imag()) <= 10 && s.real() >= 0 && s.real() <= 4 && borwein(s, e)) return e;
  return euler_maclaurin(s);
}

}  // namespace hp
