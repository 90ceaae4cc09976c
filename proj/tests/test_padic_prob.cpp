#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hp/numen.hpp"
#include "hp/padic_prob.hpp"
#include "hp/parallel.hpp"

using namespace hp;

TEST_CASE("van der Put coefficients") {
  CHECK(vdp_coeff(0, 3) == 0);
  CHECK(vdp_coeff(1, 3) == Rational(1, 2));
  CHECK(vdp_coeff(6, 3) == Rational(3, 8));
  // c_t = chi(t) - chi(t with its top bit cleared)
  for (unsigned long t = 1; t < 512; ++t) {
    const Natural top = pow2(bit_length(t) - 1);
    CHECK(vdp_coeff(t, 5) == chi(t, 5) - chi(Natural(t) - top, 5));
  }
}

TEST_CASE("Fourier transform of chi_N") {
  CHECK(std::abs(chi_N_hat(0, 2, 3) - 0.5) < 1e-15);
  CHECK(std::abs(chi_N_hat(0, 3, 3) - 0.75) < 1e-15);
  const auto inv = chi_N_inverse(chi_N_hat_all(2, 3));
  CHECK(std::abs(inv[3] - 1.25) < 1e-14);
  for (std::uint64_t N : {1, 4, 7})
    for (std::uint64_t p : {3, 5}) {
      const auto all = chi_N_hat_all(N, p);
      for (unsigned long k = 0; k < all.size(); ++k) {
        CHECK(std::abs(chi_N_hat(k, N, p) - all[k]) < 1e-12);
        CHECK(std::abs(chi_N_hat_dft(k, N, p) - all[k]) < 1e-12);
      }
      const auto back = chi_N_inverse(all);
      for (unsigned long t = 0; t < back.size(); ++t) CHECK(std::abs(back[t] - to_double(chi(t, p))) < 1e-12);
    }
}

TEST_CASE("f_p closed form") {
  CHECK(f_p_exact(1, 1, 3) == Rational(1, 3));
  CHECK(f_p_exact(2, 1, 3) == Rational(2, 3));
  CHECK(f_p_exact(0, 1, 3) == 0);
  const std::pair<int, Rational> mod9[] = {{0, 0},  {1, Rational(8, 63)}, {2, Rational(16, 63)},
                                           {3, 0},  {4, Rational(11, 63)}, {5, Rational(4, 63)},
                                           {6, 0},  {7, Rational(2, 63)}, {8, Rational(22, 63)}};
  const auto f = f_p_distribution(2, 3);
  for (const auto& [k, v] : mod9) CHECK(f[k] == v);
  for (auto [p, n] : {std::pair<int, int>{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}})
    CHECK(f_p_distribution(n, p).total() == 1);
  // the closed form needs 2 to generate the units mod p^2
  CHECK_THROWS_AS(f_p_distribution(1, 7), DomainError);
}

TEST_CASE("f_p closed form lies inside the enumeration interval") {
  for (auto [p, n] : {std::pair<int, int>{3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}}) {
    const auto f = f_p_distribution(n, p);
    const auto e = f_p_enumerate(n, p, 48);
    for (std::size_t k = 0; k < f.masses.size(); ++k) {
      CHECK(e.lower[k] <= f[k]);
      CHECK(f[k] <= e.lower[k] + e.tail);
    }
  }
}

TEST_CASE("f_p oracles") {
  const auto e = f_p_oracle(1, 1, 3, EnumerateMethod{40});
  REQUIRE(e.exact_lo);
  CHECK(*e.exact_lo <= Rational(1, 3));
  CHECK(Rational(1, 3) <= *e.exact_lo + *e.exact_width);
  CHECK(*e.exact_width < make_rational(1, pow2(39)));
  const auto m = f_p_oracle(2, 1, 3, MonteCarloMethod{1000000, 1});
  CHECK(std::abs(m.value - 2.0 / 3) < 0.0015);
  CHECK(f_p_oracle(3, 1, 3, EnumerateMethod{30}).value == 0);
}

TEST_CASE("Monte Carlo counts are reproducible and thread independent") {
  const unsigned saved = threads();
  set_threads(1);
  const auto a = f_p_sample_counts(2, 3, MonteCarloMethod{20000, 5});
  set_threads(4);
  const auto b = f_p_sample_counts(2, 3, MonteCarloMethod{20000, 5});
  set_threads(saved);
  CHECK(a == b);
  CHECK(a != f_p_sample_counts(2, 3, MonteCarloMethod{20000, 6}));
}

TEST_CASE("phi_p") {
  CHECK(phi_p(PadicCharacter::make(0, 1, 3)) == cplx(1));
  const cplx v = phi_p(PadicCharacter::make(1, 1, 3));
  CHECK(std::abs(v - cplx(-0.5, -std::sqrt(3.0) / 6)) < 1e-14);
  const cplx lhs = phi_p(PadicCharacter::make(2, 1, 3));
  const cplx rhs = 0.5 * v + 0.5 * std::polar(1.0, 2 * std::numbers::pi / 3);
  CHECK(std::abs(lhs - rhs) < 1e-14);
  for (std::uint64_t p : {3, 5})
    for (std::uint64_t a = 0; a < p * p * p; ++a) {
      const auto t = PadicCharacter::make(Integer(static_cast<unsigned long>(a)), 3, p);
      CHECK(std::abs(phi_p(t) - phi_p_from_mass(t)) < 1e-12);
    }
}

TEST_CASE("Lipschitz bound") {
  auto b = lipschitz_bound(TwoAdicSpec(1L), TwoAdicSpec(2L), 3, 64);
  REQUIRE(b.exponent);
  CHECK(*b.exponent == 0);
  CHECK(*chi_distance_exponent(1, 2, 3) == 0);
  b = lipschitz_bound(TwoAdicSpec(1L), TwoAdicSpec(4L), 3, 64);
  REQUIRE(b.exponent);
  CHECK(*b.exponent == 1);
  CHECK(b.bound() == doctest::Approx(1.0 / 3));
  CHECK(*chi_distance_exponent(1, 4, 3) == 1);
  CHECK_FALSE(lipschitz_bound(TwoAdicSpec(9L), TwoAdicSpec(9L), 3, 64).exponent);
  CHECK_FALSE(chi_distance_exponent(9, 9, 3));
  // 2-adic rationals: compare against chi_mod
  for (long a = -30; a <= 30; ++a)
    for (long c : {-1L, 3L, 17L}) {
      const TwoAdicSpec s(Rational(a, 3)), t(c);
      if (s == t) continue;
      const auto lb = lipschitz_bound(s, t, 3, 64);
      REQUIRE(lb.exponent);
      const std::uint64_t e = std::min<std::uint64_t>(*lb.exponent, 8);
      if (e > 0) CHECK(chi_mod(s, 3, e) == chi_mod(t, 3, e));
    }
  CHECK_THROWS_AS(lipschitz_bound(TwoAdicSpec(1L), TwoAdicSpec(2L), 7, 8), DomainError);
}

TEST_CASE("congruence criterion") {
  auto c = congruence_sufficient(5, 5, 2, 3);
  CHECK(c.sufficient);
  CHECK(c.residues_equal);
  c = congruence_sufficient(1, 4, 1, 3);
  CHECK(c.sufficient);
  CHECK(c.residues_equal);
  CHECK_FALSE(congruence_sufficient(1, 2, 1, 3).sufficient);
}

TEST_CASE("Bayesian bracket bound") {
  auto r = bayes_check(1, BitWord{0, 1}, 1, 3);
  CHECK(r.bracket == 1);
  CHECK(r.bound == Rational(4, 3));
  CHECK(r.bound_holds);
  r = bayes_check(1, BitWord{0, 1}, 2, 3);
  CHECK(r.bracket == 1);
  CHECK(r.f == Rational(8, 63));
  CHECK(r.f >= Rational(1, 16));
  CHECK(r.length_ok);
  r = bayes_check(5, BitWord{0, 1}, 1, 3);
  CHECK(r.bracket == 0);
  CHECK(r.bound_holds);
  for (std::uint64_t n = 1; n <= 3; ++n) CHECK(f_p_exact(1, n, 3) >= make_rational(1, pow_ui(4, n)));
}
