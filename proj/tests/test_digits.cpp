#include "doctest.h"

#include "hp/digits.hpp"

using namespace hp;

TEST_CASE("digit profile") {
  auto d = digit_profile(1);
  CHECK(d.ones == 1);
  CHECK(d.length == 1);
  CHECK(d.positions == std::vector<std::uint64_t>{0});
  d = digit_profile(0);
  CHECK(d.ones == 0);
  CHECK(d.length == 0);
  CHECK(d.positions.empty());
  d = digit_profile(6);
  CHECK(d.ones == 2);
  CHECK(d.length == 3);
  CHECK(d.positions == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("words and naturals") {
  CHECK(word_to_nat(BitWord{0, 1}) == 2);
  CHECK(word_to_nat(BitWord{1, 1}) == 3);
  CHECK(word_to_nat(BitWord{0, 1, 0, 1}) == 10);
  CHECK(nat_to_word(2) == BitWord{0, 1});
  CHECK(nat_to_word(0).empty());
  CHECK(nat_to_word(5) == BitWord{1, 0, 1});
  for (unsigned long n = 0; n < 300; ++n) CHECK(word_to_nat(nat_to_word(n)) == n);
}

TEST_CASE("concat_power") {
  CHECK(concat_power(BitWord{0, 1}, 2) == BitWord{0, 1, 0, 1});
  CHECK(word_to_nat(concat_power(BitWord{0, 1}, 2)) == 10);
  CHECK(concat_power(BitWord{1}, 3) == BitWord{1, 1, 1});
  CHECK(concat_power(BitWord{0, 1}, 1) == BitWord{0, 1});
}

TEST_CASE("big_B") {
  CHECK(big_B(1) == -1);
  CHECK(big_B(7) == -1);
  CHECK(big_B(2) == Rational(-2, 3));
  for (unsigned n = 1; n < 20; ++n) CHECK(big_B(pow2(n) - 1) == -1);
}

TEST_CASE("valuations and orders") {
  CHECK(padic_valuation(6, 3) == 1);
  CHECK(padic_valuation(63, 3) == 2);
  CHECK(padic_valuation(5, 3) == 0);
  CHECK(abs_2m_minus1_exponent(2, 3) == 1);
  CHECK(abs_2m_minus1_exponent(6, 3) == 2);
  CHECK(abs_2m_minus1_exponent(1, 3) == 0);
  CHECK(multiplicative_order(2, 9) == 6);
  CHECK(multiplicative_order(2, 25) == 20);
  CHECK(is_friend_of_2(3));
  CHECK(is_friend_of_2(5));
  CHECK_FALSE(is_friend_of_2(7));
}

TEST_CASE("TwoAdicSpec round trip") {
  for (long b : {1, 3, 5, 7, 9, 15, 21, 63})
    for (long a = -40; a <= 40; ++a) {
      const Rational q = make_rational(a, b);
      const TwoAdicSpec z(q);
      CHECK(TwoAdicSpec::from_digits(z.prefix(), z.period()).value() == q);
      // digits agree with the residue mod 2^m
      for (std::uint64_t m : {1u, 5u, 12u}) {
        Natural acc = 0;
        for (std::uint64_t i = 0; i < m; ++i)
          if (z.digit(i)) acc += pow2(i);
        CHECK(acc == z.mod_pow2(m));
      }
    }
  CHECK(TwoAdicSpec(-1L).period() == BitWord{1});
  CHECK(TwoAdicSpec(Rational(-1, 7)).period() == BitWord{1, 0, 0});
  CHECK_THROWS_AS(TwoAdicSpec(Rational(1, 2)), DomainError);
}
