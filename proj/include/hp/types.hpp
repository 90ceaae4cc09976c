#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hp {

using Natural = mpz_class;
using Integer = mpz_class;
using Rational = mpq_class;
using cplx = std::complex<double>;

// Bit j_ell at index ell-1 carries 2^{ell-1}: least significant bit first.
struct BitWord {
  std::vector<std::uint8_t> bits;

  BitWord() = default;
  BitWord(std::initializer_list<int> b);
  explicit BitWord(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  int operator[](std::size_t i) const { return bits[i]; }
  std::size_t ones() const;
  std::string str() const;  // "(0,1,0,1)"
  bool operator==(const BitWord&) const = default;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Natural pow_ui(std::uint64_t base, std::uint64_t e);
Natural pow2(std::uint64_t e);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
double to_double(const Rational& q);

// a * b^{-1} mod m for b a unit mod m.
Natural mod_ratio(const Integer& a, const Integer& b, const Natural& m);

bool is_prime_u64(std::uint64_t n);
void require_odd_prime(std::uint64_t p, const char* who);

}  // namespace hp
