#include "doctest.h"

#include <cmath>
#include <random>

#include "hp/dirichlet.hpp"
#include "hp/kernels.hpp"

using namespace hp;
using namespace hp::kernels;

namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> v;
  for (Isa i : {Isa::avx2, Isa::neon})
    if (available(i)) v.push_back(i);
  return v;
}

struct IsaGuard {
  Isa saved = active();
  ~IsaGuard() { set_active(saved); }
};

}  // namespace

TEST_CASE("dispatch") {
  CHECK(available(Isa::scalar));
  CHECK(available(best()));
  IsaGuard g;
  set_active(Isa::scalar);
  CHECK(active() == Isa::scalar);
  for (Isa i : {Isa::avx2, Isa::neon})
    if (!available(i)) CHECK_THROWS(set_active(i));
  if (vector_isas().empty()) MESSAGE("no vector ISA on this host; equivalence tests compare scalar with itself");
}

TEST_CASE("power_table matches scalar") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> U(0, 12);
  const std::size_t n = 1037;  // not a multiple of the vector width
  std::vector<double> lnx(n), r0(n), i0(n), r1(n), i1(n);
  for (auto& v : lnx) v = U(gen);
  for (Isa isa : vector_isas())
    for (double sigma : {-0.25, 0.5, 2.0})
      for (double t : {0.0, 14.1, 987.6, -2500.0}) {
        power_table(Isa::scalar, lnx.data(), n, sigma, t, r0.data(), i0.data());
        power_table(isa, lnx.data(), n, sigma, t, r1.data(), i1.data());
        double worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
          const double scale = std::exp(-sigma * lnx[k]);
          worst = std::max(worst, std::hypot(r0[k] - r1[k], i0[k] - i1[k]) / scale);
        }
        CHECK(worst < 1e-12);
      }
}

TEST_CASE("weighted_sums matches scalar") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(-1, 1);
  const std::size_t n = 501, nw = 3;
  std::vector<double> re(n), im(n);
  std::vector<std::vector<double>> w(nw, std::vector<double>(n));
  for (auto& v : re) v = U(gen);
  for (auto& v : im) v = U(gen);
  for (auto& row : w)
    for (auto& v : row) v = U(gen);
  const double* wp[nw] = {w[0].data(), w[1].data(), w[2].data()};
  std::complex<double> a[nw], b[nw];
  weighted_sums(Isa::scalar, wp, nw, re.data(), im.data(), n, a);
  for (Isa isa : vector_isas()) {
    weighted_sums(isa, wp, nw, re.data(), im.data(), n, b);
    for (std::size_t k = 0; k < nw; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-12);
  }
}

TEST_CASE("dyadic_tail matches scalar") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> U(-1, 1);
  const std::size_t n = 77, J = 24;
  std::vector<double> x(n), pr(n), pi(n), wr(n), wc(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 0.5 * std::abs(U(gen)) / double(i + 1);
    pr[i] = U(gen);
    pi[i] = U(gen);
    wr[i] = U(gen);
    wc[i] = U(gen);
  }
  std::vector<std::complex<double>> coef[5];
  for (auto& c : coef)
    for (std::size_t j = 0; j < J; ++j) c.emplace_back(U(gen), U(gen));
  TailBlock b;
  b.x = x.data();
  b.pw_re = pr.data();
  b.pw_im = pi.data();
  b.wr = wr.data();
  b.wc = wc.data();
  b.n = n;
  b.terms = J;
  for (int c = 0; c < 5; ++c) b.coef[c] = coef[c].data();
  std::complex<double> a[5], v[5];
  dyadic_tail(Isa::scalar, b, a);
  for (Isa isa : vector_isas()) {
    dyadic_tail(isa, b, v);
    for (int c = 0; c < 5; ++c) CHECK(std::abs(a[c] - v[c]) < 1e-12 * (1 + std::abs(a[c])));
  }
}

TEST_CASE("engine output agrees across ISAs") {
  IsaGuard g;
  EvalConfig cfg;
  std::vector<cplx> pts = {{-0.25, 1000.0}, {0.6, 3.0}, {2.0, -40.0}};
  set_active(Isa::scalar);
  std::vector<Bundle> ref;
  for (auto s : pts) ref.push_back(evaluate_bundle(s, 3, cfg));
  for (Isa isa : vector_isas()) {
    set_active(isa);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Bundle v = evaluate_bundle(pts[i], 3, cfg);
      const double tol = 1e-10 * (1 + std::abs(ref[i].xi_p));
      CHECK(std::abs(v.xi_p - ref[i].xi_p) < tol);
      CHECK(std::abs(v.zeta_p - ref[i].zeta_p) < 1e-10 * (1 + std::abs(ref[i].zeta_p)));
      CHECK(std::abs(v.F - ref[i].F) < 1e-10 * (1 + std::abs(ref[i].F)));
    }
  }
}
