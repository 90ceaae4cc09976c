#pragma once

#include "hp/digits.hpp"
#include "hp/numen.hpp"
#include "hp/padic_prob.hpp"

namespace hp {

struct KappaParams {
  std::uint64_t p = 3;
  std::uint64_t kappa = 3;
  // κ >= ⌈log2 p⌉ and 2^κ - 1 > p
  bool satisfies_hypotheses() const;
  void require(const char* who) const;
};

TwoAdicSpec tau_kappa(const TwoAdicSpec& z, std::uint64_t kappa);

// Σ p^{k-1} / 2^{β_k(z)+1} in closed form; throws DomainError when the tail
// ratio p^a / 2^L of the periodic part is >= 1.
Rational chi_prime_real(const TwoAdicSpec& z, std::uint64_t p);

cplx chi_kappa_hat(const DyadicCharacter& t, const KappaParams& k);
Rational chi_kappa_hat0(const KappaParams& k);
Rational chi_kappa_hat_half(const KappaParams& k);

Rational l1_bound(const KappaParams& k);

struct L1Truncation {
  double value = 0;  // Σ_{|t|_2 <= 2^M} |χ̂(t)|
  double tail = 0;   // majorant for the rest
  std::vector<double> shells;  // shells[m] = Σ_{|t|_2 = 2^m} |χ̂(t)|
};
L1Truncation l1_norm_truncated(const KappaParams& k, std::uint64_t M);

// Σ_{|t|_2 <= 2^M} χ̂(t) e^{2πi{tz}_2}; depends on z mod 2^M only.
double chi_kappa_partial_sum(const TwoAdicSpec& z, const KappaParams& k, std::uint64_t M);
// (1/2^N) Σ_{n < 2^N} χ'_p(τ_κ(n)), via χ(2z) = χ(z)/2^κ, χ(2z+1) = (pχ(z) + 2^{κ-1})/2^κ.
double chi_kappa_mean(const KappaParams& k, std::uint64_t N);

// B(t) = word^∞ lies in D_κ: cyclic gaps between consecutive ones are >= κ.
bool word_in_D_kappa(const BitWord& j, std::uint64_t kappa);
// Stricter: every one of word^∞ sits at a multiple of κ, i.e. word^∞ ∈ τ_κ(ℤ_2).
bool word_in_tau_image(const BitWord& j, std::uint64_t kappa);

struct RoutedCycles {
  std::vector<CycleRecord> all;
  std::vector<CycleRecord> routed;  // ω > 0 with word in D_κ
  Rational bound;
};
RoutedCycles routed_periodic_points(const KappaParams& k, const Natural& t_max);

}  // namespace hp
