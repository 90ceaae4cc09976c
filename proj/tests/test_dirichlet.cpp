#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hp/contour.hpp"
#include "hp/dirichlet.hpp"
#include "hp/numen.hpp"
#include "hp/summatory.hpp"

using namespace hp;

namespace {
// direct partial sums with the integral tail bound, independent of the library series code
cplx direct_sum(std::uint64_t N, cplx s, bool use_chi) {
  cplx acc = 0;
  for (std::uint64_t n = 0; n < N; ++n) {
    const double a = use_chi ? to_double(chi(n, 3)) : to_double(r(n, 3));
    acc += a * std::exp(-s * std::log(double(n + 1)));
  }
  return acc;
}
}  // namespace

TEST_CASE("Riemann zeta") {
  CHECK(riemann_zeta(2.0).value.real() == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-13));
  CHECK(riemann_zeta(0.0).value.real() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(riemann_zeta(-1.0).value.real() == doctest::Approx(-1.0 / 12).epsilon(1e-12));
}

TEST_CASE("zeta_3 and xi_3 against partial sums") {
  EvalConfig cfg;
  // r_3 averages (3/2)^{#1} / 2^lambda, so terms decay like n^{-s}
  const cplx z3 = zeta_p(3.0, 3, cfg).value, ps = direct_sum(1u << 16, 3.0, false);
  CHECK(std::abs(z3 - ps) < 1e-6);
  const cplx x3 = xi_p(3.0, 3, cfg).value, pc = direct_sum(1u << 16, 3.0, true);
  CHECK(std::abs(x3 - pc) < 1e-6);
  // overlap of the continuation and the direct series
  for (double s : {2.5, 3.0}) {
    CHECK(std::abs(zeta_p(s, 3, cfg, Method::dyadic).value - zeta_p(s, 3, cfg, Method::direct).value) < 1e-6);
    CHECK(std::abs(xi_p(s, 3, cfg, Method::dyadic).value - xi_p(s, 3, cfg, Method::direct).value) < 1e-6);
    CHECK(std::abs(xi_p(s, 3, cfg, Method::functional).value - xi_p(s, 3, cfg, Method::dyadic).value) < 1e-6);
  }
  CHECK_THROWS_AS(xi_p(1.0, 3, cfg), DomainError);
  CHECK_THROWS_AS(zeta_p(sigma_p(3), 3, cfg), DomainError);
}

TEST_CASE("continuation is analytic across the line of convergence") {
  EvalConfig cfg;
  // Cauchy: average over a circle equals the centre value
  const cplx c(0.6, 3.0);
  const double rad = 0.2;
  cplx avg = 0;
  const int K = 64;
  for (int k = 0; k < K; ++k) avg += xi_p(c + std::polar(rad, 2 * std::numbers::pi * k / K), 3, cfg).value;
  avg /= double(K);
  CHECK(std::abs(avg - xi_p(c, 3, cfg).value) < 1e-8);
}

TEST_CASE("auxiliary F, G stabilise in the binomial truncation") {
  EvalConfig a, b;
  a.binom_terms = 40;
  b.binom_terms = 80;
  CHECK(std::abs(aux_F(1.0, 3, a, Method::functional).value - aux_F(1.0, 3, b, Method::functional).value) < 1e-10);
  CHECK(std::abs(aux_G(1.0, 3, a, Method::functional).value - aux_G(1.0, 3, b, Method::functional).value) < 1e-10);
  CHECK(std::isfinite(std::abs(aux_F(2.0, 3, a).value)));
}

TEST_CASE("kappa kernel") {
  for (std::uint64_t n = 1; n <= 200; ++n) {
    CHECK(kappa_exact(n, 1) == 4);
    CHECK(kappa_exact(n, 0) == 0);
    CHECK(std::abs(kappa(n, 1.0) - 4.0) < 1e-9);
  }
  CHECK(kappa_exact(2, 2) == 42);
  CHECK(kappa(2, 2.0).real() == doctest::Approx(42));
  for (std::uint64_t n = 2; n <= 64; ++n) CHECK(std::abs(kappa(n, 0.0, true)) <= kappa_prime0_bound(n));
}

TEST_CASE("C_omega") {
  EvalConfig cfg;
  const cplx s = 3.0;
  const cplx want = 1.5 * riemann_zeta(s).value - zeta_p(s, 3, cfg).value - xi_p(s, 3, cfg).value;
  CHECK(std::abs(c_omega(s, 1, 3, cfg).value - want) < 1e-9);
  CHECK_THROWS_AS(c_omega(1.0, 1, 3, cfg), DomainError);
  CHECK(c_omega_coefficient(2, 1, 3) == Rational(1, 2));
  CHECK(c_omega_coefficient(1, 1, 3) == Rational(-1, 2));
  CHECK(c_omega_coefficient(1, -1, 3) == Rational(1, 2));
}

TEST_CASE("quadrature reference") {
  CHECK(quadrature_reference(2) == doctest::Approx(0.28696).epsilon(1e-4));
  CHECK(quadrature_reference(1) == doctest::Approx(2 * std::acosh(7.0) / std::sqrt(48.0)).epsilon(1e-12));
}

TEST_CASE("zeta cache") {
  ZetaCache cache;
  EvalConfig cfg;
  const auto a = cache.get(ZetaCache::Fn::xi_p, {2.0, 1.0}, 3, cfg);
  const auto b = cache.get(ZetaCache::Fn::xi_p, {2.0, 1.0}, 3, cfg);
  CHECK(a.value == b.value);
  CHECK(cache.hits() == 1);
  CHECK(cache.size() == 1);
}

TEST_CASE("residue sum is real for real omega") {
  EvalConfig cfg;
  cfg.k_modes = 32;
  const auto r = residue_R3_corrected(1, 2, cfg);
  CHECK(std::abs(r.value.imag()) < 1e-12);
}
