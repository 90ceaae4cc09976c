#include "hp/digits.hpp"

#include <sstream>
#include <unordered_map>

namespace hp {

BitWord::BitWord(std::initializer_list<int> b) {
  for (int x : b) {
    if (x != 0 && x != 1) throw DomainError("BitWord: entries must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(x));
  }
}

std::size_t BitWord::ones() const {
  std::size_t c = 0;
  for (auto b : bits) c += b;
  return c;
}

std::string BitWord::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (i) s += ',';
    s += char('0' + bits[i]);
  }
  return s + ")";
}

Natural pow_ui(std::uint64_t base, std::uint64_t e) {
  Natural r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

Natural pow2(std::uint64_t e) {
  Natural r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }
double to_double(const Rational& q) { return q.get_d(); }

Natural mod_ratio(const Integer& a, const Integer& b, const Natural& m) {
  Natural inv;
  Integer bm = b % m;
  if (bm < 0) bm += m;
  if (mpz_invert(inv.get_mpz_t(), bm.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("mod_ratio: denominator is not a unit");
  Natural r = (a % m) * inv % m;
  if (r < 0) r += m;
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  Natural z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) > 0;
}

void require_odd_prime(std::uint64_t p, const char* who) {
  if (p % 2 == 0 || !is_prime_u64(p))
    throw DomainError(std::string(who) + ": p must be an odd prime, got " + std::to_string(p));
}

std::uint64_t popcount(const Natural& n) {
  if (n < 0) throw DomainError("popcount: negative input");
  return mpz_popcount(n.get_mpz_t());
}

std::uint64_t bit_length(const Natural& n) {
  if (n < 0) throw DomainError("bit_length: negative input");
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

DigitProfile digit_profile(const Natural& n) {
  DigitProfile d;
  d.length = bit_length(n);
  d.ones = popcount(n);
  d.positions.reserve(d.ones);
  mp_bitcnt_t i = 0;
  while (d.positions.size() < d.ones) {
    i = mpz_scan1(n.get_mpz_t(), i);
    d.positions.push_back(i);
    ++i;
  }
  return d;
}

Natural word_to_nat(const BitWord& j) {
  Natural n = 0;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i]) mpz_setbit(n.get_mpz_t(), i);
  return n;
}

BitWord nat_to_word(const Natural& n) {
  std::uint64_t L = bit_length(n);
  std::vector<std::uint8_t> b(L);
  for (std::uint64_t i = 0; i < L; ++i) b[i] = mpz_tstbit(n.get_mpz_t(), i);
  return BitWord(std::move(b));
}

BitWord concat_power(const BitWord& j, std::uint64_t m) {
  if (m == 0) throw DomainError("concat_power: m must be >= 1");
  std::vector<std::uint8_t> b;
  b.reserve(j.size() * m);
  for (std::uint64_t r = 0; r < m; ++r) b.insert(b.end(), j.bits.begin(), j.bits.end());
  return BitWord(std::move(b));
}

Rational big_B(const Natural& t) {
  if (t < 0) throw DomainError("big_B: negative input");
  if (t == 0) return 0;
  return make_rational(t, Integer(1) - pow2(bit_length(t)));
}

std::uint64_t padic_valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) throw DomainError("padic_valuation: zero has infinite valuation");
  if (p < 2) throw DomainError("padic_valuation: p must be >= 2");
  Natural P(static_cast<unsigned long>(p));
  Integer r;
  return mpz_remove(r.get_mpz_t(), n.get_mpz_t(), P.get_mpz_t());
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      f.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

std::uint64_t totient(std::uint64_t m) {
  std::uint64_t r = m;
  for (auto q : prime_factors(m)) r = r / q * (q - 1);
  return r;
}

}  // namespace

std::uint64_t multiplicative_order(const Natural& a, const Natural& m) {
  if (m < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  if (!m.fits_ulong_p()) throw DomainError("multiplicative_order: modulus too large");
  Natural g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw DomainError("multiplicative_order: base not a unit");
  std::uint64_t ord = totient(m.get_ui());
  for (auto q : prime_factors(ord)) {
    while (ord % q == 0) {
      Natural r;
      Natural e(static_cast<unsigned long>(ord / q));
      mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
      if (r != 1) break;
      ord /= q;
    }
  }
  return ord;
}

bool is_friend_of_2(std::uint64_t p) {
  require_odd_prime(p, "is_friend_of_2");
  Natural P(static_cast<unsigned long>(p));
  return multiplicative_order(2, P) == p - 1 && multiplicative_order(2, P * P) == p * (p - 1);
}

std::uint64_t abs_2m_minus1_exponent(std::uint64_t m, std::uint64_t p) {
  if (m == 0) throw DomainError("abs_2m_minus1_exponent: m must be >= 1");
  if (!is_friend_of_2(p)) throw DomainError("abs_2m_minus1_exponent: p is not a friend of 2");
  if (m % (p - 1) != 0) return 0;
  return padic_valuation(Integer(static_cast<unsigned long>(m)), p) + 1;
}

TwoAdicSpec::TwoAdicSpec(const Rational& q) : q_(q) {
  q_.canonicalize();
  if (mpz_even_p(q_.get_den_mpz_t()))
    throw DomainError("TwoAdicSpec: denominator must be odd, got " + q_.get_str());
}

TwoAdicSpec TwoAdicSpec::from_digits(const BitWord& prefix, const BitWord& period) {
  if (period.empty()) throw DomainError("TwoAdicSpec: period must be non-empty");
  Rational head(word_to_nat(prefix));
  Rational rep(word_to_nat(period));
  Rational tail = rep / Rational(Integer(1) - pow2(period.size()));
  return TwoAdicSpec(head + Rational(pow2(prefix.size())) * tail);
}

void TwoAdicSpec::expand() const {
  if (exp_) return;
  const Integer& b = q_.get_den();
  Integer a = q_.get_num();
  std::map<Integer, std::size_t> seen;
  std::vector<std::uint8_t> digits;
  while (true) {
    auto it = seen.find(a);
    if (it != seen.end()) {
      std::size_t start = it->second;
      BitWord pre(std::vector<std::uint8_t>(digits.begin(), digits.begin() + start));
      BitWord per(std::vector<std::uint8_t>(digits.begin() + start, digits.end()));
      exp_.emplace(std::move(pre), std::move(per));
      return;
    }
    seen.emplace(a, digits.size());
    std::uint8_t d = mpz_odd_p(a.get_mpz_t()) ? 1 : 0;
    digits.push_back(d);
    if (d) a -= b;
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), 2);
  }
}

const BitWord& TwoAdicSpec::prefix() const {
  expand();
  return exp_->first;
}

const BitWord& TwoAdicSpec::period() const {
  expand();
  return exp_->second;
}

int TwoAdicSpec::digit(std::uint64_t i) const {
  if (is_natural()) return mpz_tstbit(q_.get_num_mpz_t(), i);
  expand();
  const auto& [pre, per] = *exp_;
  if (i < pre.size()) return pre[i];
  return per[(i - pre.size()) % per.size()];
}

std::vector<std::uint64_t> TwoAdicSpec::one_positions(std::size_t count) const {
  std::vector<std::uint64_t> out;
  if (is_natural()) {
    auto d = digit_profile(q_.get_num());
    for (std::size_t k = 0; k < d.positions.size() && k < count; ++k) out.push_back(d.positions[k]);
    return out;
  }
  expand();
  const auto& [pre, per] = *exp_;
  for (std::size_t i = 0; i < pre.size() && out.size() < count; ++i)
    if (pre[i]) out.push_back(i);
  // period of a non-natural always contains a one
  std::uint64_t base = pre.size();
  while (out.size() < count) {
    for (std::size_t i = 0; i < per.size() && out.size() < count; ++i)
      if (per[i]) out.push_back(base + i);
    base += per.size();
  }
  return out;
}

Natural TwoAdicSpec::mod_pow2(std::uint64_t m) const {
  if (m == 0) return 0;
  return mod_ratio(q_.get_num(), q_.get_den(), pow2(m));
}

}  // namespace hp
