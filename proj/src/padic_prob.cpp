#include "hp/padic_prob.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "hp/numen.hpp"
#include "hp/parallel.hpp"

namespace hp {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  for (; e; e >>= 1, b = mulmod(b, b, m))
    if (e & 1) r = mulmod(r, b, m);
  return r;
}

u64 small_pow(u64 p, u64 n, u64 cap, const char* who) {
  u64 M = 1;
  for (u64 i = 0; i < n; ++i) {
    if (M > cap / p) throw DomainError(std::string(who) + ": modulus p^n too large");
    M *= p;
  }
  return M;
}

void require_friend(u64 p, const char* who) {
  require_odd_prime(p, who);
  if (!is_friend_of_2(p))
    throw DomainError(std::string(who) + ": 2 must be a primitive root mod p and p^2");
}

cplx unit_phase(u64 num, u64 den) { return std::polar(1.0, kTwoPi * double(num) / double(den)); }

}  // namespace

DyadicCharacter DyadicCharacter::make(const Natural& k, std::uint64_t N) {
  DyadicCharacter c;
  Natural mod = pow2(N);
  c.num = k % mod;
  if (c.num < 0) c.num += mod;
  c.m = N;
  while (c.m > 0 && mpz_even_p(c.num.get_mpz_t())) {
    c.num /= 2;
    --c.m;
  }
  if (c.num == 0) c.m = 0;
  return c;
}

PadicCharacter PadicCharacter::make(const Integer& k, std::uint64_t n, std::uint64_t p) {
  require_odd_prime(p, "PadicCharacter");
  PadicCharacter c;
  c.p = p;
  Natural mod = pow_ui(p, n);
  c.num = k % mod;
  if (c.num < 0) c.num += mod;
  c.n = n;
  while (c.n > 0 && mpz_divisible_ui_p(c.num.get_mpz_t(), p)) {
    c.num /= static_cast<unsigned long>(p);
    --c.n;
  }
  if (c.num == 0) c.n = 0;
  return c;
}

Rational ProbMass::total() const {
  Rational s = 0;
  for (const auto& m : masses) s += m;
  return s;
}

Rational vdp_coeff(const Natural& t, std::uint64_t p) {
  require_odd_prime(p, "vdp_coeff");
  if (t < 0) throw DomainError("vdp_coeff: t must be >= 0");
  if (t == 0) return 0;
  return make_rational(pow_ui(p, popcount(t) - 1), pow2(bit_length(t)));
}

cplx chi_N_hat(const Natural& k, std::uint64_t N, std::uint64_t p) {
  require_odd_prime(p, "chi_N_hat");
  if (N < 1 || N > 30) throw DomainError("chi_N_hat: need 1 <= N <= 30");
  if (k < 0 || k >= pow2(N)) throw DomainError("chi_N_hat: k must lie in [0, 2^N)");
  const DyadicCharacter t = DyadicCharacter::make(k, N);
  const u64 den = u64(1) << t.m, num = t.num.get_ui();
  const u64 start = t.m == 0 ? 1 : std::max<u64>(den / 2, 1), end = u64(1) << N;
  const double lp = std::log(double(p)), l2 = std::numbers::ln2;
  cplx acc = 0;
  for (u64 n = start; n < end; ++n) {
    const int ones = std::popcount(n), lam = std::bit_width(n);
    const double c = std::exp((ones - 1) * lp - 2 * lam * l2);
    acc += c * (t.m ? unit_phase(den - mulmod(n, num, den), den) : cplx(1));
  }
  return acc;
}

namespace {

std::vector<double> chi_table(std::uint64_t N, std::uint64_t p) {
  std::vector<double> v(std::size_t(1) << N);
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = to_double(chi(Natural(static_cast<unsigned long>(n)), p));
  return v;
}

}  // namespace

cplx chi_N_hat_dft(const Natural& k, std::uint64_t N, std::uint64_t p) {
  require_odd_prime(p, "chi_N_hat_dft");
  if (N < 1 || N > 24) throw DomainError("chi_N_hat_dft: need 1 <= N <= 24");
  if (k < 0 || k >= pow2(N)) throw DomainError("chi_N_hat_dft: k must lie in [0, 2^N)");
  const auto x = chi_table(N, p);
  const u64 M = x.size(), kk = k.get_ui();
  cplx acc = 0;
  for (u64 n = 1; n < M; ++n) acc += x[n] * unit_phase(M - mulmod(n, kk, M), M);
  return acc / double(M);
}

std::vector<cplx> chi_N_hat_all(std::uint64_t N, std::uint64_t p) {
  require_odd_prime(p, "chi_N_hat_all");
  if (N < 1 || N > 12) throw DomainError("chi_N_hat_all: need 1 <= N <= 12");
  const auto x = chi_table(N, p);
  const std::size_t M = x.size();
  std::vector<cplx> w(M), out(M);
  for (std::size_t i = 0; i < M; ++i) w[i] = unit_phase(M - i, M);
  for (std::size_t k = 0; k < M; ++k) {
    cplx acc = 0;
    for (std::size_t n = 1; n < M; ++n) acc += x[n] * w[(n * k) % M];
    out[k] = acc / double(M);
  }
  return out;
}

std::vector<cplx> chi_N_inverse(const std::vector<cplx>& hat) {
  const std::size_t M = hat.size();
  if (M == 0 || (M & (M - 1))) throw DomainError("chi_N_inverse: length must be a power of two");
  std::vector<cplx> w(M), out(M);
  for (std::size_t i = 0; i < M; ++i) w[i] = unit_phase(i, M);
  for (std::size_t n = 0; n < M; ++n) {
    cplx acc = 0;
    for (std::size_t k = 0; k < M; ++k) acc += hat[k] * w[(n * k) % M];
    out[n] = acc;
  }
  return out;
}

ProbMass f_p_distribution(std::uint64_t n, std::uint64_t p, const PadicConfig& cfg) {
  require_friend(p, "f_p_exact");
  if (n < 1) throw DomainError("f_p_exact: n must be >= 1");
  const u64 M = small_pow(p, n, u64(1) << 40, "f_p_exact");
  // u_h ranges over [0, p^{n-h}) for h < n; j over [0, p-1)^n.
  std::vector<u64> urange(n + 1, 1);
  double terms = std::pow(double(p - 1), double(n));
  u64 emax = n * (p - 2);
  for (u64 h = 1; h < n; ++h) {
    urange[h] = small_pow(p, n - h, M, "f_p_exact");
    terms *= double(urange[h]);
    emax += (p - 1) * (urange[h] - 1);
  }
  if (terms > double(cfg.max_terms))
    throw DomainError("f_p_exact: " + std::to_string(u64(terms)) + " terms exceed the cap of " +
                      std::to_string(cfg.max_terms));
  if (double(M) * double(emax + 1) > 5e7) throw DomainError("f_p_exact: table too large");
  // cnt[X * (emax+1) + E] counts terms with α ≡ X and weight exponent E.
  std::vector<std::uint32_t> cnt(M * (emax + 1), 0);
  std::vector<u64> ppow(n + 1, 1);
  for (u64 l = 1; l <= n; ++l) ppow[l] = ppow[l - 1] * p;
  const u64 g = powmod(2, p - 1, M);
  auto rec = [&](auto&& self, u64 h, u64 E, u64 pw, u64 X) -> void {
    if (h > n) {
      ++cnt[X * (emax + 1) + E];
      return;
    }
    u64 pu = pw;
    for (u64 u = 0; u < urange[h]; ++u, pu = mulmod(pu, g, M)) {
      u64 pj = pu;
      for (u64 j = 0; j + 1 < p; ++j, pj = mulmod(pj, 2, M))
        self(self, h + 1, E + (p - 1) * u + j, pj, (X + mulmod(pj, ppow[h - 1], M)) % M);
    }
  };
  rec(rec, 1, 0, 1 % M, 0);

  Integer D = 1;
  for (u64 l = 0; l < n; ++l) D *= pow2((p - 1) * ppow[l]) - 1;
  ProbMass out{p, n, std::vector<Rational>(M)};
  for (u64 X = 0; X < M; ++X) {
    Integer acc = 0;
    for (u64 E = emax + 1; E-- > 0;) {
      acc *= 2;
      acc += static_cast<unsigned long>(cnt[X * (emax + 1) + E]);
    }
    out.masses[X] = make_rational(acc, D);
  }
  return out;
}

Rational f_p_exact(const Natural& k, std::uint64_t n, std::uint64_t p, const PadicConfig& cfg) {
  ProbMass m = f_p_distribution(n, p, cfg);
  Natural mod = pow_ui(p, n), r = k % mod;
  if (r < 0) r += mod;
  return m.masses[r.get_ui()];
}

EnumeratedMass f_p_enumerate(std::uint64_t n, std::uint64_t p, std::uint64_t depth) {
  require_odd_prime(p, "f_p_oracle");
  if (n < 1) throw DomainError("f_p_oracle: n must be >= 1");
  if (depth < n || depth > 4096) throw DomainError("f_p_oracle: need n <= depth <= 4096");
  const u64 M = small_pow(p, n, u64(1) << 32, "f_p_oracle");
  if (double(M) * double(n) * double(depth) > 2e8) throw DomainError("f_p_oracle: enumeration too large");
  // dp[c][res]: bit strings of the current length holding c < n ones, by partial residue.
  std::vector<std::vector<Integer>> dp(n, std::vector<Integer>(M)), nx = dp;
  std::vector<Integer> fin(M);
  dp[0][0] = 1;
  const u64 inv2 = (M + 1) / 2;
  u64 inv = inv2;
  for (u64 i = 0; i < depth; ++i, inv = mulmod(inv, inv2, M)) {
    const Natural free_bits = pow2(depth - i - 1);
    for (auto& row : nx)
      for (auto& v : row) v = 0;
    u64 pc = 1;
    for (u64 c = 0; c < n; ++c, pc *= p) {
      const u64 step = mulmod(pc % M, inv, M);
      for (u64 r = 0; r < M; ++r) {
        const Integer& v = dp[c][r];
        if (v == 0) continue;
        nx[c][r] += v;
        const u64 t = (r + step) % M;
        if (c + 1 == n) fin[t] += v * free_bits;
        else nx[c + 1][t] += v;
      }
    }
    std::swap(dp, nx);
  }
  const Natural total = pow2(depth);
  Integer rest = 0;
  for (const auto& row : dp)
    for (const auto& v : row) rest += v;
  EnumeratedMass out{{p, n, std::vector<Rational>(M)}, make_rational(rest, total)};
  for (u64 r = 0; r < M; ++r) out.lower.masses[r] = make_rational(fin[r], total);
  return out;
}

std::vector<std::uint64_t> f_p_sample_counts(std::uint64_t n, std::uint64_t p,
                                             const MonteCarloMethod& m) {
  require_odd_prime(p, "f_p_oracle");
  if (n < 1) throw DomainError("f_p_oracle: n must be >= 1");
  const u64 M = small_pow(p, n, u64(1) << 20, "f_p_oracle");
  constexpr u64 kShards = 64;
  const unsigned workers = std::max(1u, std::min<unsigned>(threads(), unsigned(kShards)));
  std::vector<std::vector<u64>> part(workers, std::vector<u64>(M, 0));
  const u64 inv2 = (M + 1) / 2;
  // Shard s always draws the same stream and sample count; integer counts merge exactly.
  parallel_chunks(kShards, workers, [&](std::size_t lo, std::size_t hi, unsigned w) {
    for (std::size_t s = lo; s < hi; ++s) {
      std::seed_seq seq{u64(m.seed & 0xffffffffu), u64(m.seed >> 32), u64(s)};
      std::mt19937_64 gen(seq);
      const u64 count = m.samples / kShards + (s < m.samples % kShards ? 1 : 0);
      u64 word = 0;
      int left = 0;
      for (u64 i = 0; i < count; ++i) {
        u64 res = 0, pc = 1 % M, inv = inv2;
        for (u64 c = 0; c < n; inv = mulmod(inv, inv2, M)) {
          if (!left) {
            word = gen();
            left = 64;
          }
          const bool bit = word & 1;
          word >>= 1;
          --left;
          if (bit) {
            res = (res + mulmod(pc, inv, M)) % M;
            pc = mulmod(pc, p, M);
            ++c;
          }
        }
        ++part[w][res];
      }
    }
  });
  std::vector<u64> out(M, 0);
  for (const auto& v : part)
    for (u64 r = 0; r < M; ++r) out[r] += v[r];
  return out;
}

OracleResult f_p_oracle(const Natural& k, std::uint64_t n, std::uint64_t p,
                        const EnumerateMethod& m) {
  EnumeratedMass e = f_p_enumerate(n, p, m.depth);
  Natural mod = pow_ui(p, n), r = k % mod;
  if (r < 0) r += mod;
  const Rational& lo = e.lower.masses[r.get_ui()];
  OracleResult o;
  o.exact_lo = lo;
  o.exact_width = e.tail;
  o.lo = to_double(lo);
  o.hi = to_double(lo + e.tail);
  o.value = o.lo;
  return o;
}

OracleResult f_p_oracle(const Natural& k, std::uint64_t n, std::uint64_t p,
                        const MonteCarloMethod& m) {
  if (m.samples == 0) throw DomainError("f_p_oracle: samples must be >= 1");
  auto counts = f_p_sample_counts(n, p, m);
  Natural mod = pow_ui(p, n), r = k % mod;
  if (r < 0) r += mod;
  const double N = double(m.samples), f = double(counts[r.get_ui()]) / N;
  const double h = 3 * std::sqrt(f * (1 - f) / N);
  return {f, f - h, f + h, std::nullopt, std::nullopt};
}

cplx phi_p(const PadicCharacter& t, const PadicConfig& cfg) {
  require_odd_prime(t.p, "phi_p");
  if (t.is_zero()) return 1;
  const u64 p = t.p, m = t.n;
  const u64 M = small_pow(p, m, u64(1) << 62, "phi_p");
  const bool friendly = is_friend_of_2(p);
  // ω[ℓ] = order of 2 mod p^{m-ℓ+1}, ℓ = 1..m
  std::vector<u64> om(m + 1), ppow(m + 1, 1);
  double terms = 1;
  for (u64 l = 1; l <= m; ++l) {
    ppow[l] = ppow[l - 1] * p;
    const Natural mod = pow_ui(p, m - l + 1);
    om[l] = friendly ? (p - 1) * pow_ui(p, m - l).get_ui()
                     : multiplicative_order(Natural(2), mod);
    terms *= double(om[l]);
  }
  if (terms > double(cfg.max_terms))
    throw DomainError("phi_p: " + std::to_string(u64(terms)) + " terms exceed the cap of " +
                      std::to_string(cfg.max_terms));
  std::vector<double> norm(m + 1);
  for (u64 l = 1; l <= m; ++l) norm[l] = 1 / (1 - std::ldexp(1.0, -int(std::min<u64>(om[l], 1000))));
  const u64 a = t.num.get_ui();
  cplx acc = 0;
  auto rec = [&](auto&& self, u64 l, u64 pw, u64 X, double w) -> void {
    if (l > m) {
      acc += w * unit_phase(mulmod(a % M, X, M), M);
      return;
    }
    u64 pj = pw;
    for (u64 j = 0; j < om[l]; ++j, pj = mulmod(pj, 2, M)) {
      const double wj = w * norm[l] * std::ldexp(1.0, int(j) - int(om[l]));
      self(self, l + 1, pj, (X + mulmod(pj, ppow[l - 1] % M, M)) % M, wj);
    }
  };
  rec(rec, 1, 1 % M, 0, 1.0);
  return acc;
}

cplx phi_p_from_mass(const PadicCharacter& t, const PadicConfig& cfg) {
  if (t.is_zero()) return 1;
  ProbMass f = f_p_distribution(t.n, t.p, cfg);
  const u64 M = f.masses.size(), a = t.num.get_ui();
  cplx acc = 0;
  for (u64 k = 0; k < M; ++k) acc += to_double(f.masses[k]) * unit_phase(mulmod(a, k, M), M);
  return acc;
}

double LipschitzBound::bound() const {
  return exponent ? std::pow(double(p), -double(*exponent)) : 0.0;
}

LipschitzBound lipschitz_bound(const TwoAdicSpec& s, const TwoAdicSpec& t, std::uint64_t p,
                               std::uint64_t K) {
  require_friend(p, "lipschitz_bound");
  if (K < 1) throw DomainError("lipschitz_bound: K must be >= 1");
  const auto bs = s.one_positions(K + 1), bt = t.one_positions(K + 1);
  LipschitzBound out;
  out.p = p;
  auto take = [&](u64 e) { out.exponent = out.exponent ? std::min(*out.exponent, e) : e; };
  for (u64 k = 1; k <= K; ++k) {
    const bool hs = bs.size() >= k, ht = bt.size() >= k;
    if (hs && ht) {
      if (bs[k - 1] == bt[k - 1]) continue;
      const Integer d = Integer(static_cast<unsigned long>(bs[k - 1])) -
                        Integer(static_cast<unsigned long>(bt[k - 1]));
      const bool same_class = mpz_divisible_ui_p(d.get_mpz_t(), p - 1);
      take((same_class ? 1 + padic_valuation(d, p) : 0) + k - 1);
    } else if (hs || ht) {
      take(k - 1);
    }
  }
  if (bs.size() > K || bt.size() > K) take(K);
  return out;
}

std::optional<std::uint64_t> chi_distance_exponent(const Natural& s, const Natural& t,
                                                   std::uint64_t p) {
  Rational d = chi(s, p) - chi(t, p);
  if (d == 0) return std::nullopt;
  return padic_valuation(d.get_num(), p);
}

bool congruences_hold(const DigitProfile& s, const DigitProfile& t, std::uint64_t m,
                      std::uint64_t p) {
  if (s.ones < m || t.ones < m)
    throw DomainError("congruence_sufficient: s and t need at least m ones");
  for (u64 k = 1; k <= m; ++k) {
    const Integer d = Integer(static_cast<unsigned long>(s.positions[k - 1])) -
                      Integer(static_cast<unsigned long>(t.positions[k - 1]));
    const Natural pk = pow_ui(p, m - k);
    if (!mpz_divisible_ui_p(d.get_mpz_t(), p - 1) || !mpz_divisible_p(d.get_mpz_t(), pk.get_mpz_t()))
      return false;
  }
  return true;
}

CongruenceCheck congruence_sufficient(const Natural& s, const Natural& t, std::uint64_t m,
                                      std::uint64_t p) {
  require_friend(p, "congruence_sufficient");
  if (m < 1) throw DomainError("congruence_sufficient: m must be >= 1");
  CongruenceCheck out;
  out.sufficient = congruences_hold(digit_profile(s), digit_profile(t), m, p);
  out.residues_equal =
      chi_mod(TwoAdicSpec(Integer(s)), p, m) == chi_mod(TwoAdicSpec(Integer(t)), p, m);
  return out;
}

BayesResult bayes_check(const Integer& x, const BitWord& j, std::uint64_t n, std::uint64_t p,
                        const PadicConfig& cfg) {
  require_odd_prime(p, "bayes_check");
  if (mpz_divisible_ui_p(x.get_mpz_t(), p)) throw DomainError("bayes_check: x must be coprime to p");
  if (j.ones() == 0) throw DomainError("bayes_check: j must contain a 1");
  if (n < 1) throw DomainError("bayes_check: n must be >= 1");
  const BitWord jn = concat_power(j, n);
  const u64 prec = n * j.ones();
  const Rational h = branch_affine_composed(jn, p)(Rational(x));
  BayesResult out;
  out.bracket = reduce_mod(h, p, prec) == reduce_mod(Rational(x), p, prec) ? 1 : 0;
  out.f = f_p_exact(x, prec, p, cfg);
  out.bound = out.f * Rational(pow2(jn.size()));
  out.bound_holds = Rational(out.bracket) <= out.bound;
  out.length_ok = out.bracket == 0 || out.bound >= 1;
  return out;
}

}  // namespace hp
