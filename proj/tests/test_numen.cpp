#include "doctest.h"

#include <map>

#include "hp/numen.hpp"

using namespace hp;

TEST_CASE("H_p orbits") {
  auto o = hp_orbit(3, 3, 100);
  REQUIRE(o.cycle);
  CHECK(o.iterates[1] == 5);
  CHECK(o.iterates[2] == 8);
  CHECK(o.cycle_length == 2);
  o = hp_orbit(1, 3, 10);
  CHECK(o.cycle);
  CHECK(o.cycle_start == 0);
  CHECK(hp_step(1, 3) == 2);
  CHECK(hp_step(2, 3) == 1);
  CHECK(hp_step(-1, 3) == -1);
}

TEST_CASE("branch maps") {
  auto h = branch_affine_composed(BitWord{0, 1}, 3);
  CHECK(h.slope == Rational(3, 4));
  CHECK(h.intercept == Rational(1, 4));
  h = branch_affine_composed(BitWord{0}, 5);
  CHECK(h.slope == Rational(1, 2));
  CHECK(h.intercept == 0);
  h = branch_affine_composed(BitWord{1, 1}, 3);
  CHECK(h.slope == Rational(9, 4));
  CHECK(h.intercept == Rational(5, 4));
}

TEST_CASE("chi, r and chi_of_B") {
  CHECK(chi(3, 3) == Rational(5, 4));
  CHECK(chi(0, 7) == 0);
  CHECK(chi(5, 5) == Rational(9, 8));
  CHECK(r(1, 3) == Rational(3, 2));
  CHECK(r(2, 3) == Rational(3, 4));
  CHECK(r(3, 3) == Rational(9, 4));
  CHECK(r(0, 3) == 1);
  CHECK(chi_of_B(10, 3) == 1);
  CHECK(chi_of_B(1, 3) == -1);
  // the reference table lists 19/7 here; its own column (4+2p+p^2)/(16-p^3) gives -19/11
  CHECK(chi_of_B(14, 3) == Rational(-19, 11));
  CHECK(chi_of_B(14, 3) == chi(14, 3) / (1 - r(14, 3)));
}

TEST_CASE("chi_p fixed point of B is a periodic point of the branch word") {
  for (unsigned long t = 1; t < 200; ++t) {
    const BitWord w = nat_to_word(t);
    const AffineMap h = branch_affine_composed(w, 3);
    const Rational x = chi_of_B(t, 3);
    CHECK(h(x) == x);
  }
}

TEST_CASE("chi_mod") {
  CHECK(chi_mod(TwoAdicSpec(-1L), 3, 2).value == 8);
  CHECK(chi_mod(TwoAdicSpec(5L), 3, 2).value == 2);
  CHECK(chi_mod(TwoAdicSpec(0L), 3, 4).value == 0);
  // agrees with chi on naturals
  for (unsigned long t = 0; t < 500; ++t)
    for (std::uint64_t n : {1, 3})
      CHECK(chi_mod(TwoAdicSpec(long(t)), 3, n) == reduce_mod(chi(t, 3), 3, n));
  // B(t) is a 2-adic rational and chi(B(t)) = chi_of_B(t)
  for (unsigned long t = 1; t < 100; ++t)
    CHECK(chi_mod(TwoAdicSpec(big_B(t)), 3, 5) == reduce_mod(chi_of_B(t, 3), 3, 5));
}

TEST_CASE("periodic point sweep") {
  auto w = find_periodic_points(3, 15);
  std::map<unsigned long, long> got;
  for (const auto& c : w) {
    CHECK(c.verified_by_orbit);
    got[c.witness_t.get_ui()] = c.omega.get_si();
  }
  // the table stops at t = 14; 15 = 1111b adds another witness of -1
  const std::map<unsigned long, long> want = {{1, -1}, {2, 1}, {3, -1}, {5, -7}, {6, -5},
                                              {7, -1}, {10, 1}, {15, -1}};
  CHECK(got == want);
  auto w5 = find_periodic_points(5, 15);
  REQUIRE(w5.size() == 2);
  CHECK(w5[0].witness_t == 2);
  CHECK(w5[0].omega == -1);
  CHECK(w5[1].witness_t == 10);
  CHECK(w5[1].omega == -1);
  auto w1 = find_periodic_points(3, 1);
  REQUIRE(w1.size() == 1);
  CHECK(w1[0].omega == -1);
}

TEST_CASE("sweep does not depend on thread count") {
  auto a = find_periodic_points(3, 1u << 14, 1), b = find_periodic_points(3, 1u << 14, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].witness_t == b[i].witness_t);
    CHECK(a[i].omega == b[i].omega);
  }
}

TEST_CASE("symbolic chi") {
  auto s = chi_symbolic(7);
  CHECK(s.chi_str() == "(4+2p+p^2)/8");
  CHECK(s.chi_B_str() == "(4+2p+p^2)/(8-p^3)");
  CHECK(chi_symbolic(1).chi_B_str() == "1/(2-p)");
  CHECK(chi_symbolic(0).chi_str() == "0");
  for (unsigned long t = 1; t < 64; ++t)
    for (std::uint64_t p : {3, 5, 7}) {
      CHECK(chi_symbolic(t).chi_at(p) == chi(t, p));
      CHECK(chi_symbolic(t).chi_B_at(p) == chi_of_B(t, p));
    }
}
