#pragma once

#include "hp/numen.hpp"

#include <optional>

namespace hp {

struct SeriesTable {
  std::string label;
  std::vector<Natural> xs;
  std::vector<Rational> ys;   // exact values, when available
  std::vector<double> yf;     // float values, always filled
  bool exact = true;
};

enum class SumKind { ones, r_p, chi_p };

SeriesTable summatory(SumKind kind, std::uint64_t p, std::uint64_t n_max);

struct ClosedSums {
  Natural ones_closed;
  Rational r_closed;
  Rational chi_closed;   // brute-force-consistent checkpoint
  Rational chi_printed;  // (N-1)/4 * 2^N, the printed p = 3 form
};
ClosedSums closed_sums(std::uint64_t p, std::uint64_t n);

Rational takagi_exact(const Rational& w, const Rational& x);  // x dyadic only
struct TakagiValue {
  double value = 0;
  std::optional<Rational> exact;
  std::uint64_t terms = 0;
};
TakagiValue takagi(const Rational& w, const Rational& x, double tol);
bool is_dyadic(const Rational& x);

Rational trollope_rhs(const Natural& n);

struct Blancmange {
  SeriesTable bl, bl_p, bl_tilde;
};
Blancmange blancmange_tables(std::uint64_t p, std::uint64_t x_max);

struct SignDensity {
  Rational plus_fraction;   // r_p(n) < 1
  Rational minus_fraction;  // r_p(n) > 1
};
SignDensity sign_density(std::uint64_t p, std::uint64_t n_max);

struct ProductIdentity {
  bool full = false, half = false;
  Rational lhs_full, rhs_full, lhs_half, rhs_half;
};
ProductIdentity product_identity_check(const Rational& a, const Rational& z, std::uint64_t m);

double sigma_p(std::uint64_t p);

}  // namespace hp
