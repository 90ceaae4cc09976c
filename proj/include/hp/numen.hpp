#pragma once

#include "hp/digits.hpp"

namespace hp {

struct AffineMap {
  Rational slope;
  Rational intercept;
  Rational operator()(const Rational& x) const { return slope * x + intercept; }
};

struct PadicResidue {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  Natural value;  // in [0, p^n)
  Natural modulus() const { return pow_ui(p, n); }
  bool operator==(const PadicResidue&) const = default;
};

struct CycleRecord {
  Natural witness_t;
  Integer omega;
  BitWord word;
  bool verified_by_orbit = false;
};

struct OrbitReport {
  std::vector<Integer> iterates;  // x_0 = start, x_{k+1} = H_p(x_k)
  BitWord parity;                 // parity of each iterate that was mapped
  bool cycle = false;
  std::size_t cycle_start = 0;  // index of the first iterate of the cycle
  std::size_t cycle_length = 0;
};

Integer hp_step(const Integer& x, std::uint64_t p);
OrbitReport hp_orbit(const Integer& x, std::uint64_t p, std::uint64_t max_steps,
                     std::uint64_t visited_cap = 1000000);

// h_j = h_{j_1} o ... o h_{j_|j|}
AffineMap branch_affine(const BitWord& j, std::uint64_t p);
AffineMap branch_affine_composed(const BitWord& j, std::uint64_t p);

Rational chi(const Natural& t, std::uint64_t p);
Rational r(const Natural& t, std::uint64_t p);
Rational chi_of_B(const Natural& t, std::uint64_t p);
PadicResidue chi_mod(const TwoAdicSpec& z, std::uint64_t p, std::uint64_t n);
PadicResidue reduce_mod(const Rational& q, std::uint64_t p, std::uint64_t n);

// χ_p(t) as a polynomial in p over 2^λ: num[k] is the coefficient of p^k.
struct ChiSymbolic {
  std::vector<Integer> num;
  std::uint64_t lambda = 0, ones = 0;
  Rational chi_at(std::uint64_t p) const;    // num(p) / 2^λ
  Rational chi_B_at(std::uint64_t p) const;  // num(p) / (2^λ - p^{#1})
  std::string chi_str() const;               // "(4+2p+p^2)/8"
  std::string chi_B_str() const;             // "(4+2p+p^2)/(8-p^3)"
};
ChiSymbolic chi_symbolic(const Natural& t);

std::vector<CycleRecord> find_periodic_points(std::uint64_t p, const Natural& t_max,
                                              unsigned threads = 0);

}  // namespace hp
