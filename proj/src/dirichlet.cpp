#include "hp/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "hp/kernels.hpp"
#include "hp/summatory.hpp"

namespace hp {

void EvalConfig::validate() const {
  if (series_terms == 0 || binom_terms == 0 || recursion_depth == 0 || k_modes == 0)
    throw DomainError("EvalConfig: counts must be positive");
  if (!(quad_T > 0) || !(quad_step > 0) || !(quad_step < 1) || !(quad_tol > 0))
    throw DomainError("EvalConfig: need quad_T > 0, 0 < quad_step < 1, quad_tol > 0");
  if (binom_terms > 200) throw DomainError("EvalConfig: binom_terms above 200");
}

std::uint64_t EvalConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  auto bits = [](double d) {
    std::uint64_t u;
    std::memcpy(&u, &d, sizeof u);
    return u;
  };
  mix(series_terms);
  mix(binom_terms);
  mix(recursion_depth);
  mix(bits(quad_T));
  mix(bits(quad_step));
  mix(k_modes);
  mix(bits(quad_tol));
  return h;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::automatic: return "automatic";
    case Method::direct: return "direct";
    case Method::dyadic: return "dyadic";
    case Method::functional: return "functional";
  }
  return "?";
}

namespace {

constexpr double kPoleTol = 1e-8;
constexpr double kDirectAccept = 1e-12;

cplx pow2c(cplx s) { return std::exp(s * std::numbers::ln2); }

void check_lattice(cplx s, double base, const char* who) {
  // poles at base - k + 2πi m/ln2, k = 0, 1, ... down to Re s
  for (int k = 0; base - k >= s.real() - 0.5; ++k)
    if (std::abs(pow2c(s - base + double(k)) - 1.0) < kPoleTol)
      throw DomainError(std::string(who) + ": too close to a pole");
}

void check_zeta_p(cplx s, std::uint64_t p) { check_lattice(s, sigma_p(p), "zeta_p"); }

void check_xi_p(cplx s, std::uint64_t p) {
  check_lattice(s, sigma_p(p), "xi_p");
  if (std::abs(s - 1.0) < kPoleTol) throw DomainError("xi_p: pole at s = 1");
}

// Direct partial sums up to N terms, all four series at once.
struct DirectTables {
  std::vector<double> lnx, wA, wB, wD, wE;
};

std::shared_ptr<const DirectTables> direct_tables(std::uint64_t p, std::uint64_t N) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const DirectTables>>
      memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[{p, N}];
  if (slot) return slot;
  auto T = std::make_shared<DirectTables>();
  std::vector<double> r(N), c(N);
  r[0] = 1;
  c[0] = 0;
  for (std::uint64_t n = 1; n < N; ++n) {
    r[n] = (n & 1) ? r[n >> 1] * double(p) / 2 : r[n >> 1] / 2;
    c[n] = (n & 1) ? (double(p) * c[n >> 1] + 1) / 2 : c[n >> 1] / 2;
  }
  const std::size_t L = 2 * N - 1;
  T->lnx.resize(L);
  for (std::size_t i = 0; i < L; ++i) T->lnx[i] = std::log(double(i + 1));
  for (auto* w : {&T->wA, &T->wB, &T->wD, &T->wE}) w->assign(L, 0.0);
  for (std::uint64_t n = 0; n < N; ++n) {
    T->wA[n] = r[n];
    T->wB[n] = c[n];
    T->wD[2 * n] = r[n];
    T->wE[2 * n] = c[n];
  }
  slot = T;
  return slot;
}

struct DirectSums {
  cplx zeta_p, xi_p, G, F;
};

DirectSums direct_sums(cplx s, std::uint64_t p, std::uint64_t N) {
  auto T = direct_tables(p, N);
  const std::size_t L = T->lnx.size();
  std::vector<double> re(L), im(L);
  auto isa = kernels::active();
  kernels::power_table(isa, T->lnx.data(), L, s.real(), s.imag(), re.data(), im.data());
  const double* w[4] = {T->wA.data(), T->wB.data(), T->wD.data(), T->wE.data()};
  cplx h[4];
  kernels::weighted_sums(isa, w, 4, re.data(), im.data(), L, h);
  const cplx two_s = pow2c(s);
  return {h[0], h[1], two_s * h[2] - h[0], two_s * h[3] - h[1]};
}

// Tail bounds from the summatory growth A(x) = O(x^{σ_p}) (times log x for Ξ_3).
double direct_tail(cplx s, std::uint64_t p, std::uint64_t N, bool chi_weights, int extra) {
  const double sp = sigma_p(p), sg = s.real() + extra, Nd = double(N);
  if (sg <= sp) return INFINITY;
  double c = chi_weights ? (p == 3 ? 1.0 : 1.0 / double(p - 3)) : double(p) / double(p - 1);
  c *= std::pow(2.0, sp);
  if (chi_weights) c *= 1 + std::log2(2 * Nd) / 4;
  const double scale = extra ? std::abs(s) / 2 : 1.0;
  return scale * c * std::pow(Nd, sp - sg) * (1 + (std::abs(s) + extra) / (sg - sp));
}

enum class Fn { zeta_p, xi_p, G, F };

Estimate direct(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg) {
  const std::uint64_t N = cfg.series_terms;
  const bool chi = (f == Fn::xi_p || f == Fn::F);
  const int extra = (f == Fn::G || f == Fn::F) ? 1 : 0;
  const double tail = direct_tail(s, p, N, chi, extra);
  if (!std::isfinite(tail)) throw DomainError("direct series does not converge at this s");
  DirectSums d = direct_sums(s, p, N);
  cplx v = f == Fn::zeta_p ? d.zeta_p : f == Fn::xi_p ? d.xi_p : f == Fn::G ? d.G : d.F;
  return {v, tail + 1e-15 * std::sqrt(double(N)) * (1 + std::abs(v))};
}

Estimate dyadic(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg) {
  Bundle b = evaluate_bundle_at_level(s, p, dyadic_level(s), unsigned(cfg.binom_terms));
  cplx v = f == Fn::zeta_p ? b.zeta_p : f == Fn::xi_p ? b.xi_p : f == Fn::G ? b.G : b.F;
  return {v, b.error};
}

// Recursion of v(s+m) downwards from the direct region.
Estimate functional(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg) {
  const double sp = sigma_p(p);
  const unsigned J = unsigned(cfg.binom_terms);
  const int m0 = std::max(0, int(std::ceil(sp + 3 - s.real())));
  if (std::uint64_t(m0) > cfg.recursion_depth)
    throw DomainError("functional-equation path needs more than recursion_depth shifts");
  const Fn base = (f == Fn::xi_p || f == Fn::F) ? Fn::xi_p : Fn::zeta_p;
  std::vector<Estimate> v(m0 + J + 1);
  for (unsigned m = m0; m <= unsigned(m0) + J; ++m) v[m] = direct(base, s + double(m), p, cfg);
  auto inner = [&](int m) {  // sum_{k=1}^J 2^{-k} C(s+m+k-1,k) v[m+k]
    cplx acc = 0, last = 0;
    double err = 0;
    cplx c = 1;
    const cplx a = s + double(m);
    for (unsigned k = 1; k <= J; ++k) {
      c *= (a + double(k - 1)) / (2.0 * k);
      cplx term = c * v[m + k].value;
      acc += term;
      err += std::abs(c) * v[m + k].error;
      last = term;
    }
    return Estimate{acc, err + std::abs(last)};
  };
  for (int m = m0 - 1; m >= 0; --m) {
    const cplx sm = s + double(m);
    Estimate g = inner(m);
    const cplx den = pow2c(sm + 1.0) - double(p) - 1.0;
    cplx lead;
    double lead_err = 0;
    if (base == Fn::zeta_p) {
      lead = pow2c(sm);
    } else {
      Estimate z = riemann_zeta(sm);
      lead = z.value;
      lead_err = z.error;
    }
    v[m] = {(lead + g.value) / den, (lead_err + g.error) / std::abs(den)};
  }
  if (f == Fn::zeta_p || f == Fn::xi_p) return v[0];
  return inner(0);  // G or F from their binomial definitions
}

Estimate evaluate(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  require_odd_prime(p, "dirichlet");
  cfg.validate();
  switch (m) {
    case Method::direct: return direct(f, s, p, cfg);
    case Method::dyadic: return dyadic(f, s, p, cfg);
    case Method::functional: return functional(f, s, p, cfg);
    case Method::automatic: break;
  }
  const bool chi = (f == Fn::xi_p || f == Fn::F);
  const int extra = (f == Fn::G || f == Fn::F) ? 1 : 0;
  if (direct_tail(s, p, cfg.series_terms, chi, extra) < kDirectAccept) return direct(f, s, p, cfg);
  return dyadic(f, s, p, cfg);
}

}  // namespace

Estimate zeta_p(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  check_zeta_p(s, p);
  return evaluate(Fn::zeta_p, s, p, cfg, m);
}

Estimate xi_p(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  check_xi_p(s, p);
  return evaluate(Fn::xi_p, s, p, cfg, m);
}

// The functional path for F and G is the binomial series over X(s+k), k >= 1,
// with X evaluated by the default method; it needs Re s > 0 for convergence.
Estimate aux_F(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  if (m != Method::functional) return evaluate(Fn::F, s, p, cfg, m);
  if (!(s.real() > 0)) throw DomainError("aux_F: binomial series needs Re s > 0");
  cplx acc = 0, c = 1, last = 0;
  double err = 0;
  for (unsigned k = 1; k <= cfg.binom_terms; ++k) {
    c *= (s + double(k - 1)) / (2.0 * k);
    Estimate x = xi_p(s + double(k), p, cfg);
    last = c * x.value;
    acc += last;
    err += std::abs(c) * x.error;
  }
  return {acc, err + std::abs(last)};
}

Estimate aux_G(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  if (m != Method::functional) return evaluate(Fn::G, s, p, cfg, m);
  if (!(s.real() > 0)) throw DomainError("aux_G: binomial series needs Re s > 0");
  cplx acc = 0, c = 1, last = 0;
  double err = 0;
  for (unsigned k = 1; k <= cfg.binom_terms; ++k) {
    c *= (s + double(k - 1)) / (2.0 * k);
    Estimate z = zeta_p(s + double(k), p, cfg);
    last = c * z.value;
    acc += last;
    err += std::abs(c) * z.error;
  }
  return {acc, err + std::abs(last)};
}

Bundle evaluate_bundle(cplx s, std::uint64_t p, const EvalConfig& cfg) {
  require_odd_prime(p, "evaluate_bundle");
  Bundle b = evaluate_bundle_at_level(s, p, dyadic_level(s), unsigned(cfg.binom_terms));
  // The dyadic ζ channel carries spurious poles on 1 + 2πik/ln2; use the
  // dedicated evaluator instead.
  Estimate z = riemann_zeta(s);
  b.zeta = z.value;
  b.error += z.error;
  return b;
}

cplx kappa(std::uint64_t n, cplx s, bool derivative) {
  if (n == 0) throw DomainError("kappa: n must be >= 1");
  // the four terms cancel to about n^{-3} of their size; long double keeps double accuracy
  using ld = long double;
  const ld N = ld(n);
  const ld xs[4] = {N + 2, N + 1, N, N - 1};
  const ld cs[4] = {N + 1, -(3 * N + 1), 3 * N - 1, -(N - 1)};
  const std::complex<ld> a(ld(s.real()) + 1, ld(s.imag()));
  std::complex<ld> acc = 0;
  for (int j = 0; j < 4; ++j) {
    if (cs[j] == 0 || xs[j] == 0) continue;
    const ld lx = std::log(xs[j]);
    const std::complex<ld> term = cs[j] * std::exp(a * lx);
    acc += derivative ? term * lx : term;
  }
  return cplx(double(acc.real()), double(acc.imag()));
}

Integer kappa_exact(std::uint64_t n, std::uint64_t s) {
  if (n == 0) throw DomainError("kappa_exact: n must be >= 1");
  auto pw = [&](std::uint64_t x) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), x, s + 1);
    return r;
  };
  Integer v = Integer(n + 1) * pw(n + 2) - Integer(3 * n + 1) * pw(n + 1) +
              Integer(3 * n - 1) * pw(n);
  if (n > 1) v -= Integer(n - 1) * pw(n - 1);
  return v;
}

double kappa_bound(std::uint64_t n, cplx s) {
  const double sg = s.real();
  return std::abs(s + 1.0) * (std::abs(sg * (sg - 1)) / 3 + 2) * std::pow(double(n + 2), sg);
}

// Write κ_n = n∇³f(n+2) + ∇f(n+2) − ∇f(n) with f(x) = x^{s+1}; then
// |∇³f| ≤ |(s+1)s(s-1)| max x^{σ-2} and |∇f| ≤ |s+1| max x^σ on the spanned intervals.
double kappa_bound_mvt(std::uint64_t n, cplx s) {
  if (n < 2) throw DomainError("kappa_bound_mvt: n >= 2");
  const double sg = s.real();
  auto mx = [&](double a, double b, double e) { return std::max(std::pow(a, e), std::pow(b, e)); };
  const double nd = double(n);
  return nd * std::abs((s + 1.0) * s * (s - 1.0)) * mx(nd - 1, nd + 2, sg - 2) +
         std::abs(s + 1.0) * (mx(nd + 1, nd + 2, sg) + mx(nd - 1, nd, sg));
}

double kappa_prime0_bound(std::uint64_t n) {
  if (n < 2) throw DomainError("kappa_prime0_bound: n >= 2");
  const double m = double(n) - 1;
  return double(n) / (m * m) + 2 * std::log1p(1 / m);
}

Estimate script_B(cplx s, std::uint64_t p, const EvalConfig& cfg) {
  require_odd_prime(p, "script_B");
  Estimate zp = zeta_p(s, p, cfg);
  if (p == 3) {
    Estimate z = riemann_zeta(s);
    return {1.5 * z.value - zp.value, 1.5 * z.error + zp.error};
  }
  // p/(p-1) [ζ(s-σ) - sum_{n>=1} n^σ (n+1)^{-s}] - ζ_p(s), the inner sum
  // expanded as sum_j C(σ,j)(-1)^j (ζ(s-σ+j) - 1).
  const double sp = sigma_p(p), q = double(p) / double(p - 1);
  Estimate z0 = riemann_zeta(s - sp);
  cplx inner = 0;
  double err = z0.error + zp.error;
  double c = 1;
  for (unsigned j = 0; j < 200; ++j) {
    if (j > 0) c *= -(sp - double(j - 1)) / double(j);
    Estimate zj = riemann_zeta(s - sp + double(j));
    cplx term = c * (zj.value - 1.0);
    inner += term;
    err += std::abs(c) * zj.error;
    if (j > 4 && std::abs(term) < 1e-17) break;
  }
  return {q * (z0.value - inner) - zp.value, q * err};
}

Estimate c_omega(cplx s, double omega, std::uint64_t p, const EvalConfig& cfg) {
  if (omega == 0) throw DomainError("c_omega: omega must be nonzero");
  Estimate b = script_B(s, p, cfg);
  Estimate x = xi_p(s, p, cfg);
  return {b.value - x.value / omega, b.error + x.error / std::abs(omega)};
}

Rational c_omega_coefficient(std::uint64_t n, const Rational& omega, std::uint64_t p) {
  if (((p + 1) & p) != 0)
    throw DomainError("c_omega_coefficient: rational only when (p+1)/2 is a power of 2");
  if (omega == 0) throw DomainError("c_omega_coefficient: omega must be nonzero");
  const auto sp = std::uint64_t(std::llround(sigma_p(p)));
  const Natural N(static_cast<unsigned long>(n));
  Natural d = pow_ui(n + 1, sp) - pow_ui(n, sp);
  Rational a = Rational(Integer(p), Integer(p - 1)) * Rational(d) - r(N, p) - chi(N, p) / omega;
  a.canonicalize();
  return a;
}

double quadrature_reference(double b) {
  if (b == 0 || b == -1) throw DomainError("quadrature_reference: b must avoid 0 and -1");
  const double c = (b * b + 4 * b + 2) / (b * b);
  return 2 / (b * b) * std::acosh(c) / std::sqrt(c * c - 1);
}

Estimate ZetaCache::get(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg, Method m) {
  const Key key{int(f), s.real(), s.imag(), p, cfg.hash(), int(m)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  Estimate e;
  switch (f) {
    case Fn::zeta: e = riemann_zeta(s); break;
    case Fn::zeta_p: e = zeta_p(s, p, cfg, m); break;
    case Fn::xi_p: e = xi_p(s, p, cfg, m); break;
    case Fn::aux_F: e = aux_F(s, p, cfg, m); break;
    case Fn::aux_G: e = aux_G(s, p, cfg, m); break;
  }
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(key, e);
  return e;
}

std::size_t ZetaCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

void ZetaCache::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  memo_.clear();
  hits_ = 0;
}

}  // namespace hp
