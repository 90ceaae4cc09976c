// Dyadic evaluator for ζ_p, Ξ_p, ζ, G_p, F_p.
//
// Every n >= N0 = 2^K is P*2^L + m with P in [N0, 2N0) and m < 2^L, so
//   r(n)   = r(P) p^{#m} / 2^L,
//   χ(n)   = χ(m) + χ(P) p^{#m} / 2^L,
//   (n+c)^{-s} = (P 2^L)^{-s} sum_j C(-s,j) ((m+c)/2^L)^j P^{-j}.
// The sums over m of p^{#m} m^i, χ(m) m^i and m^i obey lower-triangular
// recursions in L, so the sum over L is a resolvent (I - zA)^{-1} in closed
// form. That closed form is meromorphic in s and carries the continuation.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "hp/dirichlet.hpp"
#include "hp/kernels.hpp"

namespace hp {

namespace {

struct Tables {
  std::uint64_t p;
  unsigned K;
  std::size_t N0;
  std::vector<double> lnx;                  // ln x, x = 1..2N0-1
  std::vector<double> wA, wB, wC, wD, wE;   // head weights over x
  std::vector<double> tx, tr, tc;           // tail: 1/P, r(P), χ(P)
  double wmax = 0;
};

std::shared_ptr<const Tables> build(std::uint64_t p, unsigned K) {
  auto T = std::make_shared<Tables>();
  T->p = p;
  T->K = K;
  const std::size_t N0 = std::size_t(1) << K, X = 2 * N0;
  T->N0 = N0;
  std::vector<double> r(X), c(X);
  r[0] = 1;
  c[0] = 0;
  for (std::size_t n = 1; n < X; ++n) {
    if (n & 1) {
      r[n] = r[n >> 1] * double(p) / 2;
      c[n] = (double(p) * c[n >> 1] + 1) / 2;
    } else {
      r[n] = r[n >> 1] / 2;
      c[n] = c[n >> 1] / 2;
    }
  }
  const std::size_t L = X - 1;  // x = 1..2N0-1
  T->lnx.resize(L);
  for (std::size_t i = 0; i < L; ++i) T->lnx[i] = std::log(double(i + 1));
  for (auto* w : {&T->wA, &T->wB, &T->wC, &T->wD, &T->wE}) w->assign(L, 0.0);
  for (std::size_t n = 0; n < N0; ++n) {
    T->wA[n] = r[n];  // x = n+1
    T->wB[n] = c[n];
    T->wC[n] = 1;
    T->wD[2 * n] = r[n];  // x = 2n+1
    T->wE[2 * n] = c[n];
  }
  T->tx.resize(N0);
  T->tr.resize(N0);
  T->tc.resize(N0);
  for (std::size_t i = 0; i < N0; ++i) {
    T->tx[i] = 1.0 / double(N0 + i);
    T->tr[i] = r[N0 + i];
    T->tc[i] = c[N0 + i];
  }
  for (std::size_t n = 0; n < X; ++n) T->wmax = std::max({T->wmax, r[n], c[n]});
  return T;
}

std::shared_ptr<const Tables> tables(std::uint64_t p, unsigned K) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const Tables>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[{p, K}];
  if (!slot) slot = build(p, K);
  return slot;
}

struct Binom {
  std::vector<std::vector<double>> c;
  explicit Binom(unsigned n) : c(n + 1) {
    for (unsigned i = 0; i <= n; ++i) {
      c[i].assign(i + 1, 1.0);
      for (unsigned l = 1; l < i; ++l) c[i][l] = c[i - 1][l - 1] + c[i - 1][l];
    }
  }
};

const Binom& binom(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<Binom>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& b = memo[n];
  if (!b) b = std::make_unique<Binom>(n);
  return *b;
}

// Moment coefficients for truncation index j, written into slot j of coef[5].
struct Moments {
  std::vector<cplx> c[5];
};

Moments moments(cplx v, double p, unsigned J) {
  const Binom& B = binom(J);
  Moments M;
  for (auto& x : M.c) x.assign(J, 0.0);
  std::vector<cplx> y(J), U(J), Y(J);
  cplx bj = 1;
  for (unsigned j = 0; j < J; ++j) {
    if (j > 0) bj *= (-v - double(j - 1)) / double(j);
    const cplx z = std::exp(-(1.0 + v + double(j)) * std::numbers::ln2);
    const cplx w = std::exp(-(v + double(j)) * std::numbers::ln2);
    for (unsigned i = 0; i <= j; ++i) {
      const auto& Ci = B.c[i];
      const double two_i = std::ldexp(1.0, int(i));
      cplx sy = (i == 0 ? 1.0 : 0.0), su = sy, sY = 0;
      for (unsigned l = 0; l < i; ++l) {
        const double g = Ci[l] * std::ldexp(1.0, int(l));
        sy += z * (p * g) * y[l];
        su += w * g * U[l];
        sY += (p / 2 * g) * Y[l] + 0.5 * g * U[l];
      }
      y[i] = sy / (1.0 - z * (two_i * (1 + p)));
      U[i] = su / (1.0 - w * (2 * two_i));
      sY += 0.5 * two_i * U[i];
      Y[i] = w * sY / (1.0 - w * (two_i / 2 * (1 + p)));
    }
    const auto& Cj = B.c[j];
    cplx qz = 0, qu = 0, rr = 0, dq = 0, dr = 0;
    for (unsigned i = 0; i <= j; ++i) {
      qz += Cj[i] * y[i];
      qu += Cj[i] * U[i];
      rr += Cj[i] * Y[i];
      if (i < j) {
        const double d = Cj[i] * (std::ldexp(1.0, int(i) - int(j)) - 1.0);
        dq += d * y[i];
        dr += d * Y[i];
      }
    }
    M.c[0][j] = bj * qz;
    M.c[1][j] = bj * rr;
    M.c[2][j] = bj * qu;
    M.c[3][j] = bj * dq;
    M.c[4][j] = bj * dr;
  }
  return M;
}

}  // namespace

unsigned dyadic_level(cplx s) {
  const double need = std::log2(4 * std::abs(s) + 16);
  return std::max(6u, unsigned(std::ceil(need)));
}

Bundle evaluate_bundle_at_level(cplx s, std::uint64_t p, unsigned K, unsigned J) {
  if (K < 2 || K > 26) throw DomainError("dyadic level out of range");
  if (J == 0) throw DomainError("binom_terms must be positive");
  const auto T = tables(p, K);
  const std::size_t N0 = T->N0, L = T->lnx.size();
  thread_local std::vector<double> re, im;
  re.resize(L);
  im.resize(L);
  const auto isa = kernels::active();
  kernels::power_table(isa, T->lnx.data(), L, s.real(), s.imag(), re.data(), im.data());

  const double* w[5] = {T->wA.data(), T->wB.data(), T->wC.data(), T->wD.data(), T->wE.data()};
  cplx h[5];
  kernels::weighted_sums(isa, w, 5, re.data(), im.data(), L, h);
  const cplx two_s = std::exp(s * std::numbers::ln2);

  Moments M = moments(s, double(p), J);
  kernels::TailBlock b;
  b.x = T->tx.data();
  b.pw_re = re.data() + (N0 - 1);
  b.pw_im = im.data() + (N0 - 1);
  b.wr = T->tr.data();
  b.wc = T->tc.data();
  b.n = N0;
  for (int c = 0; c < 5; ++c) b.coef[c] = M.c[c].data();
  b.terms = J;
  cplx tail[5];
  kernels::dyadic_tail(isa, b, tail);

  Bundle out;
  out.zeta_p = h[0] + tail[0];
  out.xi_p = h[1] + tail[1];
  out.zeta = h[2] + tail[2];
  out.G = two_s * h[3] - h[0] + tail[3];
  out.F = two_s * h[4] - h[1] + tail[4];

  // Rounding scale from the size of the head sums; truncation from the last
  // retained Horner coefficient.
  const double sg = s.real(), X = double(L);
  const double scale =
      1 + (std::abs(1 - sg) < 1e-9 ? std::log(X) : (std::pow(X, 1 - sg) - 1) / (1 - sg));
  double last = 0;
  const double xJ = std::pow(1.0 / double(N0), double(J - 1));
  for (int c = 0; c < 5; ++c) {
    const double a = std::abs(M.c[c][J - 1]);
    if (std::isfinite(a)) last = std::max(last, a * xJ);  // a channel on its own pole stays non-finite
  }
  const double tail_scale =
      double(N0) * std::max(std::pow(double(N0), -sg), std::pow(X, -sg)) * (1 + T->wmax);
  out.error = 64 * 2.2e-16 * scale * (1 + std::abs(two_s)) * (1 + T->wmax) + last * tail_scale;
  return out;
}

}  // namespace hp
