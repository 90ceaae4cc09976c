#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hp/l1method.hpp"

using namespace hp;

TEST_CASE("tau_kappa") {
  CHECK(tau_kappa(TwoAdicSpec(3L), 2).value() == 5);
  CHECK(tau_kappa(TwoAdicSpec(3L), 3).value() == 9);
  CHECK(tau_kappa(TwoAdicSpec(-1L), 3).value() == Rational(-1, 7));
  CHECK_THROWS_AS(tau_kappa(TwoAdicSpec(3L), 1), DomainError);
}

TEST_CASE("chi_prime_real") {
  CHECK(chi_prime_real(TwoAdicSpec(Rational(-1, 7)), 3) == Rational(4, 5));
  CHECK(chi_prime_real(TwoAdicSpec(4L), 3) == Rational(1, 8));
  CHECK_THROWS_AS(chi_prime_real(TwoAdicSpec(-1L), 3), DomainError);
  // partial sums over the first ones converge to the closed form
  const TwoAdicSpec z = tau_kappa(TwoAdicSpec(Rational(-1, 3)), 3);
  const auto pos = z.one_positions(60);
  double acc = 0, pk = 1;
  for (auto b : pos) {
    acc += pk * std::ldexp(1.0, -int(b + 1));
    pk *= 3;
  }
  CHECK(acc == doctest::Approx(to_double(chi_prime_real(z, 3))).epsilon(1e-12));
}

TEST_CASE("Fourier coefficients") {
  const KappaParams k{3, 3};
  CHECK(chi_kappa_hat0(k) == Rational(1, 3));
  CHECK(chi_kappa_hat_half(k) == Rational(-7, 24));
  const cplx q = chi_kappa_hat(DyadicCharacter::make(1, 2), k);
  CHECK(std::abs(q - (-7.0 / 384) * cplx(1, -3)) < 1e-15);
  CHECK(std::abs(chi_kappa_hat(DyadicCharacter::make(1, 1), k) - (-7.0 / 24)) < 1e-15);
}

TEST_CASE("Fourier coefficients against a discrete transform") {
  // average over z < 2^N approximates the Haar integral; the digits past N move chi by < (p/2^k)^(N/k)
  const KappaParams k{3, 3};
  const std::uint64_t N = 15, n = std::uint64_t(1) << N;
  std::vector<double> v(n);
  for (std::uint64_t z = 0; z < n; ++z) v[z] = to_double(chi_prime_real(tau_kappa(TwoAdicSpec(long(z)), 3), 3));
  for (std::uint64_t m = 0; m <= 4; ++m)
    for (std::uint64_t a = 1; a < (1u << m) || (m == 0 && a == 1); a += 2) {
      const std::uint64_t num = m == 0 ? 0 : a;
      cplx acc = 0;
      for (std::uint64_t z = 0; z < n; ++z) {
        const std::uint64_t ph = (num * z) & ((std::uint64_t(1) << m) - 1);
        acc += v[z] * std::polar(1.0, -2 * std::numbers::pi * double(ph) / double(1u << m));
      }
      acc /= double(n);
      CHECK(std::abs(acc - chi_kappa_hat(DyadicCharacter::make(num, m), k)) < 1e-3);
    }
}

TEST_CASE("L1 bound") {
  CHECK(l1_bound({3, 3}) == Rational(11, 12));
  CHECK(l1_bound({3, 4}) == Rational(9, 14));
  CHECK_THROWS_AS(l1_bound({3, 2}), DomainError);
  CHECK_FALSE(KappaParams{3, 2}.satisfies_hypotheses());
  CHECK(KappaParams{5, 3}.satisfies_hypotheses());
  const auto t10 = l1_norm_truncated({3, 3}, 10);
  CHECK(t10.value <= 11.0 / 12);
  CHECK(t10.value + t10.tail <= 11.0 / 12);
  const auto t2 = l1_norm_truncated({3, 3}, 2);
  const double shell2 = 2 * std::abs(chi_kappa_hat(DyadicCharacter::make(1, 2), {3, 3}));
  CHECK(t2.value == doctest::Approx(1.0 / 3 + 7.0 / 24 + shell2).epsilon(1e-14));
  for (std::uint64_t m = 0; m < 10; ++m) CHECK(t10.shells[m + 1] <= t10.shells[m]);
}

TEST_CASE("partial sums reconstruct chi'_3 o tau_3") {
  const KappaParams k{3, 3};
  const auto tr = l1_norm_truncated(k, 12);
  for (const Rational& z : {Rational(-1), Rational(-1, 3), Rational(5), Rational(7, 9)}) {
    const TwoAdicSpec zs(z);
    const double exact = to_double(chi_prime_real(tau_kappa(zs, 3), 3));
    CHECK(std::abs(chi_kappa_partial_sum(zs, k, 12) - exact) <= tr.tail);
  }
}

TEST_CASE("mean of chi'_3 o tau_3") {
  const KappaParams k{3, 3};
  CHECK(chi_kappa_mean(k, 16) == doctest::Approx(1.0 / 3).epsilon(0.05));
  double brute = 0;
  for (long z = 0; z < 256; ++z) brute += to_double(chi_prime_real(tau_kappa(TwoAdicSpec(z), 3), 3));
  CHECK(chi_kappa_mean(k, 8) == doctest::Approx(brute / 256).epsilon(1e-13));
}

TEST_CASE("D_kappa membership") {
  CHECK(word_in_D_kappa(BitWord{1, 0, 0}, 3));
  CHECK_FALSE(word_in_D_kappa(BitWord{0, 1}, 3));
  CHECK(word_in_D_kappa(BitWord{1, 0, 0, 0}, 3));  // gap 4 is allowed
  CHECK_FALSE(word_in_tau_image(BitWord{1, 0, 0, 0}, 3));
  CHECK(word_in_tau_image(BitWord{1, 0, 0, 1, 0, 0}, 3));
  CHECK(word_in_D_kappa(BitWord{0, 0, 0}, 3));
}

TEST_CASE("no positive routed periodic point") {
  const auto rc = routed_periodic_points({3, 3}, 1u << 16);
  CHECK(rc.routed.empty());
  CHECK(rc.bound == Rational(11, 12));
  CHECK_FALSE(rc.all.empty());
}
