#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "hp/types.hpp"

namespace hp {

struct EvalConfig {
  std::uint64_t series_terms = 65536;  // direct truncation N
  std::uint64_t binom_terms = 40;      // inner binomial / moment truncation
  std::uint64_t recursion_depth = 8;   // unit shifts allowed on the functional-equation path
  double quad_T = 2000;
  double quad_step = 0.5;
  std::uint64_t k_modes = 128;
  double quad_tol = 1e-9;  // absolute, per unit length of the line
  void validate() const;
  std::uint64_t hash() const;
};

struct Estimate {
  cplx value;
  double error = 0;  // heuristic absolute error budget
};

enum class Method {
  automatic,   // direct when its tail is negligible, dyadic otherwise
  direct,      // truncated series, converging region only
  dyadic,      // closed-form dyadic tail; valid in the continued region
  functional,  // recursive binomial functional equation (oracle path)
};
const char* method_name(Method m);

Estimate riemann_zeta(cplx s);

Estimate zeta_p(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m = Method::automatic);
Estimate xi_p(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m = Method::automatic);

// F_p(s) = sum_{n>=0} chi_p(n) [(n+1/2)^{-s} - (n+1)^{-s}], G_p likewise with r_p.
// Method::functional sums sum_{k>=1} 2^{-k} C(s+k-1,k) X(s+k) to binom_terms.
Estimate aux_F(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m = Method::automatic);
Estimate aux_G(cplx s, std::uint64_t p, const EvalConfig& cfg, Method m = Method::automatic);

// Everything the contour code needs at one point, from a single dyadic pass.
struct Bundle {
  cplx zeta, zeta_p, xi_p, F, G;
  double error = 0;
};
Bundle evaluate_bundle(cplx s, std::uint64_t p, const EvalConfig& cfg);

// Truncation level of the dyadic evaluator: prefix length N0 = 2^K.
unsigned dyadic_level(cplx s);
Bundle evaluate_bundle_at_level(cplx s, std::uint64_t p, unsigned K, unsigned J);

cplx kappa(std::uint64_t n, cplx s, bool derivative = false);
Integer kappa_exact(std::uint64_t n, std::uint64_t s);  // integer s >= 0
double kappa_bound(std::uint64_t n, cplx s);             // |s+1|(|σ(σ-1)|/3+2)(n+2)^σ
double kappa_bound_mvt(std::uint64_t n, cplx s);         // mean-value bound with |s-1|
double kappa_prime0_bound(std::uint64_t n);              // n/(n-1)^2 + 2 ln(1+1/(n-1))

// B_p(s): (3/2)ζ(s) - ζ_3(s) when p = 3; general p uses the expanded series.
Estimate script_B(cplx s, std::uint64_t p, const EvalConfig& cfg);
// C_{p,ω}(s) = B_p(s) - Ξ_p(s)/ω
Estimate c_omega(cplx s, double omega, std::uint64_t p, const EvalConfig& cfg);
// Coefficient of (n+1)^{-s} in C_{p,ω}.
Rational c_omega_coefficient(std::uint64_t n, const Rational& omega, std::uint64_t p);

double quadrature_reference(double b);

// Memo of (function, s, config) -> Estimate. Hits return the stored object.
class ZetaCache {
 public:
  enum class Fn { zeta, zeta_p, xi_p, aux_F, aux_G };
  Estimate get(Fn f, cplx s, std::uint64_t p, const EvalConfig& cfg, Method m = Method::automatic);
  std::size_t size() const;
  std::size_t hits() const { return hits_; }
  void clear();

 private:
  using Key = std::tuple<int, double, double, std::uint64_t, std::uint64_t, int>;
  mutable std::mutex mu_;
  std::map<Key, Estimate> memo_;
  std::size_t hits_ = 0;
};

}  // namespace hp
