#include "doctest.h"

#include <cmath>

#include "hp/summatory.hpp"

using namespace hp;

TEST_CASE("summatory functions") {
  auto o = summatory(SumKind::ones, 3, 3);
  CHECK(o.ys == std::vector<Rational>{1, 2, 4});
  auto r3 = summatory(SumKind::r_p, 3, 3);
  CHECK(r3.ys == std::vector<Rational>{Rational(3, 2), Rational(9, 4), Rational(9, 2)});
  auto c3 = summatory(SumKind::chi_p, 3, 3);
  CHECK(c3.ys == std::vector<Rational>{Rational(1, 2), Rational(3, 4), Rational(2)});
}

TEST_CASE("closed sums") {
  CHECK(closed_sums(3, 3).r_closed == Rational(21, 2));
  CHECK(closed_sums(3, 2).chi_closed == 2);
  CHECK(closed_sums(3, 2).chi_printed == 1);
  CHECK(closed_sums(3, 3).ones_closed == 12);
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const auto s = summatory(SumKind::r_p, p, 1023);
    const auto c = summatory(SumKind::chi_p, p, 1023);
    for (std::uint64_t n = 1; n <= 10; ++n) {
      CHECK(s.ys[(1u << n) - 2] == closed_sums(p, n).r_closed);
      if (p == 3) CHECK(c.ys[(1u << n) - 2] == closed_sums(p, n).chi_closed);
    }
  }
}

TEST_CASE("Trollope") {
  CHECK(trollope_rhs(3) == 4);
  CHECK(trollope_rhs(1) == 1);
  CHECK(trollope_rhs(7) == 12);
  const auto o = summatory(SumKind::ones, 3, 2000);
  for (unsigned long n = 1; n <= 2000; ++n) CHECK(o.ys[n - 1] == trollope_rhs(n));
}

TEST_CASE("Takagi") {
  auto v = takagi(Rational(1, 2), Rational(1, 2), 1e-12);
  REQUIRE(v.exact);
  CHECK(*v.exact == Rational(1, 2));
  v = takagi(Rational(1, 4), Rational(1, 2), 1e-12);
  REQUIRE(v.exact);
  CHECK(*v.exact == Rational(1, 2));
  CHECK(takagi(Rational(3, 5), Rational(0), 1e-12).value == 0);
  // w = 1/4 is the parabola 2x(1-x)
  for (int k = 1; k < 16; ++k) {
    const Rational x(k, 16);
    CHECK(takagi_exact(Rational(1, 4), x) == 2 * x * (1 - x));
  }
  CHECK(takagi(Rational(1, 4), Rational(1, 3), 1e-13).value == doctest::Approx(4.0 / 9).epsilon(1e-11));
}

TEST_CASE("blancmange tables") {
  const auto b = blancmange_tables(3, 8);
  CHECK(b.bl_p.ys[2] == 0);
  CHECK(b.bl_tilde.yf[0] == doctest::Approx(-0.5));
  CHECK(b.bl.yf[2] == doctest::Approx(0.0));
}

TEST_CASE("sign density") {
  auto d = sign_density(3, 4);
  CHECK(d.plus_fraction == Rational(1, 2));
  CHECK(d.minus_fraction == Rational(1, 2));
  d = sign_density(5, 2);
  CHECK(d.plus_fraction == 0);
  CHECK(d.minus_fraction == 1);
  d = sign_density(3, 1);
  CHECK(d.plus_fraction == 0);
  CHECK(d.minus_fraction == 1);
}

TEST_CASE("product identity") {
  auto c = product_identity_check(1, 1, 3);
  CHECK(c.full);
  CHECK(c.lhs_full == 8);
  c = product_identity_check(3, 1, 2);
  CHECK(c.full);
  CHECK(c.lhs_full == 16);
  CHECK(product_identity_check(2, Rational(1, 2), 2).full);
}

TEST_CASE("sigma_p") {
  CHECK(sigma_p(3) == 1.0);
  CHECK(sigma_p(7) == 2.0);
  CHECK(sigma_p(5) == doctest::Approx(std::log2(3.0)));
}
