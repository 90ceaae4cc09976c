#include "hp/summatory.hpp"

#include <cmath>

namespace hp {

double sigma_p(std::uint64_t p) {
  if (p % 2 == 0) throw DomainError("sigma_p: p must be odd");
  return std::log2((static_cast<double>(p) + 1) / 2);
}

SeriesTable summatory(SumKind kind, std::uint64_t p, std::uint64_t n_max) {
  if (n_max < 1) throw DomainError("summatory: n_max must be >= 1");
  if (kind != SumKind::ones) require_odd_prime(p, "summatory");
  SeriesTable t;
  t.label = kind == SumKind::ones ? "#1" : kind == SumKind::r_p ? "r_p" : "chi_p";
  Rational acc = 0;
  for (std::uint64_t m = 1; m <= n_max; ++m) {
    Natural M(static_cast<unsigned long>(m));
    switch (kind) {
      case SumKind::ones: acc += popcount(M); break;
      case SumKind::r_p: acc += r(M, p); break;
      case SumKind::chi_p: acc += chi(M, p); break;
    }
    t.xs.push_back(M);
    t.ys.push_back(acc);
    t.yf.push_back(acc.get_d());
  }
  return t;
}

ClosedSums closed_sums(std::uint64_t p, std::uint64_t n) {
  if (n < 1) throw DomainError("closed_sums: n must be >= 1");
  require_odd_prime(p, "closed_sums");
  ClosedSums c;
  c.ones_closed = Natural(static_cast<unsigned long>(n)) * pow2(n - 1);
  Rational P(static_cast<unsigned long>(p));
  Rational an = make_rational(pow_ui(p + 1, n), pow2(n));
  c.r_closed = P / (P - 1) * (an - 1);
  // S_{N+1} = a S_N + 2^{N-1}, S_0 = 0
  if (p == 3) {
    c.chi_closed = Rational(Natural(static_cast<unsigned long>(n)) * pow2(n)) / 4;
  } else {
    c.chi_closed = (an - Rational(pow2(n))) / (P - 3);
  }
  c.chi_printed = Rational(Natural(static_cast<unsigned long>(n - 1)) * pow2(n)) / 4;
  return c;
}

bool is_dyadic(const Rational& x) {
  const Integer& d = x.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

namespace {

// distance from 2^n * x to the nearest integer, for rational x = a/b
Rational tri_shift(const Rational& x, std::uint64_t n) {
  const Integer& b = x.get_den();
  Integer a = x.get_num() * pow2(n);
  Integer f = a % b;
  if (f < 0) f += b;
  Integer g = b - f;
  return make_rational(f < g ? f : g, b);
}

}  // namespace

Rational takagi_exact(const Rational& w, const Rational& x) {
  if (!is_dyadic(x)) throw DomainError("takagi_exact: x must be a dyadic rational");
  std::uint64_t m = mpz_sizeinbase(x.get_den_mpz_t(), 2) - 1;
  Rational acc = 0, wn = 1;
  for (std::uint64_t n = 0; n < m; ++n) {
    acc += wn * tri_shift(x, n);
    wn *= w;
  }
  return acc;
}

TakagiValue takagi(const Rational& w, const Rational& x, double tol) {
  if (!(tol > 0)) throw DomainError("takagi: tol must be > 0");
  if (abs(w) >= 1) throw DomainError("takagi: |w| must be < 1");
  if (x < 0 || x > 1) throw DomainError("takagi: x must lie in [0,1]");
  TakagiValue v;
  if (is_dyadic(x)) {
    v.exact = takagi_exact(w, x);
    v.value = v.exact->get_d();
    v.terms = mpz_sizeinbase(x.get_den_mpz_t(), 2) - 1;
    return v;
  }
  double aw = std::fabs(w.get_d());
  double wd = w.get_d();
  double acc = 0, wn = 1, tail = 0.5 / (1 - aw);
  std::uint64_t n = 0;
  while (tail >= tol) {
    acc += wn * tri_shift(x, n).get_d();
    wn *= wd;
    tail *= aw;
    ++n;
  }
  v.value = acc;
  v.terms = n;
  return v;
}

Rational trollope_rhs(const Natural& n) {
  if (n < 1) throw DomainError("trollope_rhs: n must be >= 1");
  std::uint64_t lam = bit_length(n);
  Rational L(static_cast<unsigned long>(lam));
  Rational np1(n + 1);
  Rational head = (np1 * (L + 1) - Rational(pow2(lam))) / 2;
  Rational arg = np1 / Rational(pow2(lam - 1)) - 1;
  Rational scale = lam >= 2 ? Rational(pow2(lam - 2)) : Rational(1, 2);
  return head - scale * takagi_exact(Rational(1, 2), arg);
}

Blancmange blancmange_tables(std::uint64_t p, std::uint64_t x_max) {
  if (x_max < 1) throw DomainError("blancmange_tables: x_max must be >= 1");
  require_odd_prime(p, "blancmange_tables");
  Blancmange b;
  b.bl.label = "Bl";
  b.bl.exact = false;
  b.bl_p.label = "Bl_p";
  b.bl_tilde.label = "Bl~_p";
  std::uint64_t half = (p + 1) / 2;
  bool sigma_int = (half & (half - 1)) == 0;
  std::uint64_t sig = sigma_int ? static_cast<std::uint64_t>(__builtin_ctzll(half)) : 0;
  b.bl_p.exact = sigma_int;
  Rational P(static_cast<unsigned long>(p));
  double sp = sigma_p(p);
  Natural ones = 0;
  Rational rsum = 0;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    Natural X(static_cast<unsigned long>(x));
    ones += popcount(X);
    Rational rx = r(X, p);
    rsum += rx;
    double xp1 = static_cast<double>(x + 1);
    b.bl.xs.push_back(X);
    b.bl.yf.push_back(xp1 / 2 * std::log2(xp1) - ones.get_d());
    b.bl_p.xs.push_back(X);
    if (sigma_int) {
      Rational v = P / (P - 1) * (Rational(pow_ui(x + 1, sig)) - 1) - rsum;
      b.bl_p.ys.push_back(v);
      b.bl_p.yf.push_back(v.get_d());
    } else {
      b.bl_p.yf.push_back(p / (p - 1.0) * (std::pow(xp1, sp) - 1) - rsum.get_d());
    }
    b.bl_tilde.xs.push_back(X);
    Rational bt = b.bl_tilde.ys.empty() ? Rational(0) : b.bl_tilde.ys.back();
    bt += 1 - rx;
    b.bl_tilde.ys.push_back(bt);
    b.bl_tilde.yf.push_back(bt.get_d());
  }
  return b;
}

SignDensity sign_density(std::uint64_t p, std::uint64_t n_max) {
  if (n_max < 1) throw DomainError("sign_density: n_max must be >= 1");
  require_odd_prime(p, "sign_density");
  std::uint64_t plus = 0, minus = 0;
  double lp = std::log2(static_cast<double>(p));
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    int ones = __builtin_popcountll(n), lam = 64 - __builtin_clzll(n);
    double e = ones * lp - lam;
    bool less;
    if (std::fabs(e) > 1e-6) {
      less = e < 0;
    } else {
      less = pow_ui(p, ones) < pow2(lam);
    }
    (less ? plus : minus) += 1;
  }
  Natural N(static_cast<unsigned long>(n_max));
  return {make_rational(Natural(static_cast<unsigned long>(plus)), N),
          make_rational(Natural(static_cast<unsigned long>(minus)), N)};
}

ProductIdentity product_identity_check(const Rational& a, const Rational& z, std::uint64_t m) {
  if (m < 1) throw DomainError("product_identity_check: m must be >= 1");
  if (m > 22) throw DomainError("product_identity_check: m too large for the exact sum");
  ProductIdentity r;
  const std::uint64_t N = 1ull << m, H = N >> 1;
  std::vector<Rational> apow(m + 1);
  apow[0] = 1;
  for (std::uint64_t k = 1; k <= m; ++k) apow[k] = apow[k - 1] * a;
  Rational zn = 1;
  for (std::uint64_t n = 0; n < N; ++n) {
    Rational term = apow[__builtin_popcountll(n)] * zn;
    r.lhs_full += term;
    if (n >= H) r.lhs_half += term;
    zn *= z;
  }
  std::vector<Rational> z2(m);  // z^{2^j}
  z2[0] = z;
  for (std::uint64_t j = 1; j < m; ++j) z2[j] = z2[j - 1] * z2[j - 1];
  Rational prod = 1;
  for (std::uint64_t j = 0; j + 1 < m; ++j) prod *= 1 + a * z2[j];
  r.rhs_half = a * z2[m - 1] * prod;
  r.rhs_full = prod * (1 + a * z2[m - 1]);
  r.full = r.lhs_full == r.rhs_full;
  r.half = r.lhs_half == r.rhs_half;
  return r;
}

}  // namespace hp
