#include "hp/numen.hpp"

#include "hp/parallel.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace hp {

Integer hp_step(const Integer& x, std::uint64_t p) {
  Integer y;
  if (mpz_odd_p(x.get_mpz_t())) {
    y = x * static_cast<unsigned long>(p) + 1;
  } else {
    y = x;
  }
  mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), 2);
  return y;
}

OrbitReport hp_orbit(const Integer& x, std::uint64_t p, std::uint64_t max_steps,
                     std::uint64_t visited_cap) {
  if (max_steps == 0) throw DomainError("hp_orbit: max_steps must be >= 1");
  OrbitReport rep;
  std::map<Integer, std::size_t> seen;
  Integer cur = x;
  rep.iterates.push_back(cur);
  for (std::uint64_t k = 0; k < max_steps; ++k) {
    if (seen.size() >= visited_cap) break;
    seen.emplace(cur, rep.iterates.size() - 1);
    rep.parity.bits.push_back(mpz_odd_p(cur.get_mpz_t()) ? 1 : 0);
    cur = hp_step(cur, p);
    rep.iterates.push_back(cur);
    auto it = seen.find(cur);
    if (it != seen.end()) {
      rep.cycle = true;
      rep.cycle_start = it->second;
      rep.cycle_length = rep.iterates.size() - 1 - it->second;
      break;
    }
  }
  return rep;
}

Rational chi(const Natural& t, std::uint64_t p) {
  if (t == 0) return 0;
  auto d = digit_profile(t);
  Integer num = 0, pk = 1;
  for (auto b : d.positions) {
    num += pk * pow2(d.length - b - 1);
    pk *= static_cast<unsigned long>(p);
  }
  return make_rational(num, pow2(d.length));
}

Rational r(const Natural& t, std::uint64_t p) {
  return make_rational(pow_ui(p, popcount(t)), pow2(bit_length(t)));
}

Rational chi_of_B(const Natural& t, std::uint64_t p) {
  if (t == 0) return 0;
  auto d = digit_profile(t);
  Integer num = 0, pk = 1;
  for (auto b : d.positions) {
    num += pk * pow2(d.length - b - 1);
    pk *= static_cast<unsigned long>(p);
  }
  return make_rational(num, pow2(d.length) - pow_ui(p, d.ones));
}

AffineMap branch_affine(const BitWord& j, std::uint64_t p) {
  Natural t = word_to_nat(j);
  return {make_rational(pow_ui(p, j.ones()), pow2(j.size())), chi(t, p)};
}

AffineMap branch_affine_composed(const BitWord& j, std::uint64_t p) {
  AffineMap m{1, 0};
  Rational P(static_cast<unsigned long>(p));
  for (std::size_t k = j.size(); k-- > 0;) {
    if (j[k]) {
      m.slope = m.slope * P / 2;
      m.intercept = (m.intercept * P + 1) / 2;
    } else {
      m.slope /= 2;
      m.intercept /= 2;
    }
  }
  return m;
}

PadicResidue reduce_mod(const Rational& q, std::uint64_t p, std::uint64_t n) {
  Natural m = pow_ui(p, n);
  return {p, n, mod_ratio(q.get_num(), q.get_den(), m)};
}

PadicResidue chi_mod(const TwoAdicSpec& z, std::uint64_t p, std::uint64_t n) {
  if (n == 0) throw DomainError("chi_mod: precision n must be >= 1");
  Natural m = pow_ui(p, n);
  Natural inv2 = (m + 1) / 2;
  Natural acc = 0, pk = 1;
  for (auto b : z.one_positions(n)) {
    Natural t;
    Natural e(static_cast<unsigned long>(b + 1));
    mpz_powm(t.get_mpz_t(), inv2.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    acc = (acc + pk * t) % m;
    pk *= static_cast<unsigned long>(p);
  }
  return {p, n, acc};
}

namespace {

using i128 = __int128;

// Integer value of chi_p(B(t)) if it is one. Returns false through `ok` when
// the word is too long for 128-bit arithmetic.
bool fast_integral(std::uint64_t t, std::uint64_t p, bool& ok, i128& omega) {
  int lam = 64 - __builtin_clzll(t);
  int ones = __builtin_popcountll(t);
  double bits = lam + ones * std::log2(static_cast<double>(p)) + 2;
  if (bits > 125) {
    ok = false;
    return false;
  }
  ok = true;
  i128 num = 0, pk = 1;
  for (int b = 0; b < lam; ++b) {
    if ((t >> b) & 1) {
      num += pk * (static_cast<i128>(1) << (lam - b - 1));
      pk *= static_cast<i128>(p);
    }
  }
  i128 den = (static_cast<i128>(1) << lam) - pk;
  if (num % den != 0) return false;
  omega = num / den;
  return true;
}

Integer from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer z = (hi << 64) + lo;
  return neg ? Integer(-z) : z;
}

CycleRecord verify_witness(const Natural& t, const Integer& omega, std::uint64_t p) {
  CycleRecord rec;
  rec.witness_t = t;
  rec.omega = omega;
  rec.word = nat_to_word(t);
  if (chi_of_B(t, p) != Rational(omega))
    throw std::logic_error("find_periodic_points: fast path disagrees with exact chi_of_B at t=" +
                           t.get_str());
  if (branch_affine(rec.word, p)(Rational(omega)) != Rational(omega))
    throw std::logic_error("find_periodic_points: h_j(omega) != omega at t=" + t.get_str());
  // iterate by hand: hp_orbit stops early when the word is a power of a shorter cycle
  const std::size_t L = rec.word.size();
  Integer x = omega;
  bool parity_ok = true;
  for (std::size_t k = 0; k < L; ++k) {
    parity_ok = parity_ok && int(mpz_odd_p(x.get_mpz_t()) ? 1 : 0) == rec.word[L - 1 - k];
    x = hp_step(x, p);
  }
  rec.verified_by_orbit = x == omega && parity_ok;
  if (!rec.verified_by_orbit)
    throw std::logic_error("find_periodic_points: orbit check failed at t=" + t.get_str());
  return rec;
}

}  // namespace

std::vector<CycleRecord> find_periodic_points(std::uint64_t p, const Natural& t_max,
                                              unsigned nthreads) {
  require_odd_prime(p, "find_periodic_points");
  if (t_max < 1) throw DomainError("find_periodic_points: t_max must be >= 1");
  if (!t_max.fits_ulong_p()) throw DomainError("find_periodic_points: t_max too large");
  const std::uint64_t T = t_max.get_ui();
  unsigned w = nthreads ? nthreads : threads();
  std::vector<std::vector<CycleRecord>> parts(std::max(1u, w));
  parallel_chunks(T, w, [&](std::size_t b, std::size_t e, unsigned id) {
    auto& out = parts[id];
    for (std::uint64_t t = b + 1; t <= e; ++t) {
      bool ok = true;
      i128 om = 0;
      bool hit = fast_integral(t, p, ok, om);
      Natural tn(static_cast<unsigned long>(t));
      if (!ok) {
        Rational q = chi_of_B(tn, p);
        if (q.get_den() == 1) out.push_back(verify_witness(tn, q.get_num(), p));
      } else if (hit) {
        out.push_back(verify_witness(tn, from_i128(om), p));
      }
    }
  });
  std::vector<CycleRecord> all;
  for (auto& v : parts)
    for (auto& c : v) all.push_back(std::move(c));
  return all;
}

}  // namespace hp

namespace hp {

namespace {

std::string poly_str(const std::vector<Integer>& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    if (!s.empty()) s += "+";
    if (k == 0 || c[k] != 1) s += c[k].get_str();
    if (k >= 1) s += "p";
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

std::string wrap(const std::string& s) {
  return s.find_first_of("+-") == std::string::npos ? s : "(" + s + ")";
}

}  // namespace

ChiSymbolic chi_symbolic(const Natural& t) {
  ChiSymbolic c;
  const auto d = digit_profile(t);
  c.lambda = d.length;
  c.ones = d.ones;
  for (std::size_t k = 0; k < d.positions.size(); ++k) c.num.push_back(pow2(d.length - d.positions[k] - 1));
  return c;
}

Rational ChiSymbolic::chi_at(std::uint64_t p) const {
  Integer v = 0;
  for (std::size_t k = num.size(); k-- > 0;) v = v * static_cast<unsigned long>(p) + num[k];
  return make_rational(v, pow2(lambda));
}

Rational ChiSymbolic::chi_B_at(std::uint64_t p) const {
  if (num.empty()) return 0;
  return chi_at(p) * Rational(pow2(lambda)) / Rational(pow2(lambda) - pow_ui(p, ones));
}

std::string ChiSymbolic::chi_str() const {
  if (num.empty()) return "0";
  return wrap(poly_str(num)) + "/" + pow2(lambda).get_str();
}

std::string ChiSymbolic::chi_B_str() const {
  if (num.empty()) return "0";
  std::string den = pow2(lambda).get_str() + "-p";
  if (ones > 1) den += "^" + std::to_string(ones);
  return wrap(poly_str(num)) + "/(" + den + ")";
}

}  // namespace hp
