#pragma once

#include "hp/types.hpp"

#include <map>
#include <optional>

namespace hp {

struct DigitProfile {
  std::uint64_t ones = 0;    // #1
  std::uint64_t length = 0;  // lambda
  std::vector<std::uint64_t> positions;  // beta_k, increasing, 0-indexed exponents
};

DigitProfile digit_profile(const Natural& n);
std::uint64_t popcount(const Natural& n);
std::uint64_t bit_length(const Natural& n);  // lambda, with lambda(0) = 0

Natural word_to_nat(const BitWord& j);
BitWord nat_to_word(const Natural& n);
BitWord concat_power(const BitWord& j, std::uint64_t m);

Rational big_B(const Natural& t);

std::uint64_t padic_valuation(const Integer& n, std::uint64_t p);
std::uint64_t multiplicative_order(const Natural& a, const Natural& m);
bool is_friend_of_2(std::uint64_t p);
std::uint64_t abs_2m_minus1_exponent(std::uint64_t m, std::uint64_t p);

// A 2-adic integer that is a rational with odd denominator. The digit
// expansion is eventually periodic; prefix/period are computed on demand.
class TwoAdicSpec {
 public:
  TwoAdicSpec() : q_(0) {}
  explicit TwoAdicSpec(const Rational& q);
  explicit TwoAdicSpec(const Integer& z) : TwoAdicSpec(Rational(z)) {}
  explicit TwoAdicSpec(long z) : TwoAdicSpec(Rational(z)) {}
  static TwoAdicSpec from_digits(const BitWord& prefix, const BitWord& period);

  const Rational& value() const { return q_; }
  bool is_natural() const { return q_.get_den() == 1 && q_.get_num() >= 0; }

  // Minimal prefix and period. Naturals get period (0).
  const BitWord& prefix() const;
  const BitWord& period() const;

  int digit(std::uint64_t i) const;
  // Positions of the first `count` ones (fewer only when the value is a natural).
  std::vector<std::uint64_t> one_positions(std::size_t count) const;
  // Residue mod 2^m as a natural.
  Natural mod_pow2(std::uint64_t m) const;

  bool operator==(const TwoAdicSpec& o) const { return q_ == o.q_; }

 private:
  void expand() const;
  Rational q_;
  mutable std::optional<std::pair<BitWord, BitWord>> exp_;
};

}  // namespace hp
