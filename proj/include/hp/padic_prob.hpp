#pragma once

#include <optional>

#include "hp/digits.hpp"

namespace hp {

// t = num / 2^m in [0, 1), reduced.
struct DyadicCharacter {
  Natural num;
  std::uint64_t m = 0;
  static DyadicCharacter make(const Natural& k, std::uint64_t N);
  Rational value() const { return make_rational(num, pow2(m)); }
  Natural magnitude() const { return num == 0 ? Natural(0) : pow2(m); }  // |t|_2
};

// t = num / p^n in [0, 1), reduced; n = -ν_p(t).
struct PadicCharacter {
  std::uint64_t p = 3;
  Natural num;
  std::uint64_t n = 0;
  static PadicCharacter make(const Integer& k, std::uint64_t n, std::uint64_t p);
  Rational value() const { return make_rational(num, pow_ui(p, n)); }
  bool is_zero() const { return num == 0; }
};

struct PadicConfig {
  std::uint64_t max_terms = 1000000;
};

// P(χ_p ≡ k mod p^n) for every k in [0, p^n).
struct ProbMass {
  std::uint64_t p = 0, n = 0;
  std::vector<Rational> masses;
  const Rational& operator[](std::size_t k) const { return masses[k]; }
  Rational total() const;
};

Rational vdp_coeff(const Natural& t, std::uint64_t p);

cplx chi_N_hat(const Natural& k, std::uint64_t N, std::uint64_t p);      // van der Put closed form
cplx chi_N_hat_dft(const Natural& k, std::uint64_t N, std::uint64_t p);  // definition
// All 2^N coefficients by the definition, and the inverse transform.
std::vector<cplx> chi_N_hat_all(std::uint64_t N, std::uint64_t p);
std::vector<cplx> chi_N_inverse(const std::vector<cplx>& hat);

ProbMass f_p_distribution(std::uint64_t n, std::uint64_t p, const PadicConfig& cfg = {});
Rational f_p_exact(const Natural& k, std::uint64_t n, std::uint64_t p, const PadicConfig& cfg = {});

struct EnumerateMethod {
  std::uint64_t depth = 40;
};
struct MonteCarloMethod {
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
};

struct OracleResult {
  double value = 0;
  double lo = 0, hi = 0;  // enumerate: [mass, mass + tail]; montecarlo: ±3σ
  std::optional<Rational> exact_lo, exact_width;  // enumerate only
};

// Exact masses of the first n ones placed below `depth`, and the leftover mass.
struct EnumeratedMass {
  ProbMass lower;
  Rational tail;
};
EnumeratedMass f_p_enumerate(std::uint64_t n, std::uint64_t p, std::uint64_t depth);
// Counts of χ_p mod p^n over i.i.d. fair bit streams; independent of the thread count.
std::vector<std::uint64_t> f_p_sample_counts(std::uint64_t n, std::uint64_t p,
                                             const MonteCarloMethod& m);

OracleResult f_p_oracle(const Natural& k, std::uint64_t n, std::uint64_t p,
                        const EnumerateMethod& m);
OracleResult f_p_oracle(const Natural& k, std::uint64_t n, std::uint64_t p,
                        const MonteCarloMethod& m);

cplx phi_p(const PadicCharacter& t, const PadicConfig& cfg = {});
// Σ_k f_p(k) e^{2πi t k} from f_p_distribution.
cplx phi_p_from_mass(const PadicCharacter& t, const PadicConfig& cfg = {});

struct LipschitzBound {
  std::optional<std::uint64_t> exponent;  // bound is p^{-exponent}; empty means no term (s = t)
  double bound() const;
  std::uint64_t p = 3;
};
LipschitzBound lipschitz_bound(const TwoAdicSpec& s, const TwoAdicSpec& t, std::uint64_t p,
                               std::uint64_t K);
// ν_p(χ_p(s) - χ_p(t)) for naturals; empty when equal.
std::optional<std::uint64_t> chi_distance_exponent(const Natural& s, const Natural& t,
                                                   std::uint64_t p);

struct CongruenceCheck {
  bool sufficient = false;
  bool residues_equal = false;  // χ_p(s) ≡ χ_p(t) mod p^m by chi_mod
};
// The 2m congruences on one-positions alone; both profiles need m ones.
bool congruences_hold(const DigitProfile& s, const DigitProfile& t, std::uint64_t m,
                      std::uint64_t p);
CongruenceCheck congruence_sufficient(const Natural& s, const Natural& t, std::uint64_t m,
                                      std::uint64_t p);

struct BayesResult {
  int bracket = 0;
  bool bound_holds = false;
  Rational f;           // f_p(x mod p^{n #1(j)})
  Rational bound;       // 2^{n|j|} f
  bool length_ok = true;  // bracket = 1 implies n|j| >= -log2 f
};
BayesResult bayes_check(const Integer& x, const BitWord& j, std::uint64_t n, std::uint64_t p,
                        const PadicConfig& cfg = {});

}  // namespace hp
