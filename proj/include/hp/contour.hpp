#pragma once

#include <vector>

#include "hp/dirichlet.hpp"

namespace hp {

// Perron kernels against C_{3,ω}(s) = Σ a_n (n+1)^{-s}.
//   riesz: Σ_j w_j x_j^{s+2} / (s(s+1)(s+2)), x = (n, n+1, n+3/2, n+2), w = (-2, 12, -16, 6);
//          picks out a_n alone.
//   kappa: κ_n(s) / (s(s+1)^2); spreads over a_{n-2..n+1}, see kappa_kernel_prediction.
enum class Kernel { riesz, kappa };
const char* kernel_name(Kernel k);

struct LineRequest {
  Kernel kernel = Kernel::riesz;
  std::uint64_t n = 1;
  double omega = 1;
};

struct LineResult {
  double value = 0;  // (1/2πi) ∫_{b-iT}^{b+iT}, real for real ω
  double quad_error = 0;
  double tail_error = 0;  // estimate of the part beyond |t| = T
  std::size_t evaluations = 0;
  double error() const { return quad_error + tail_error; }
};

// All requests share one set of quadrature nodes on Re s = b.
std::vector<LineResult> line_integrals(double b, const std::vector<LineRequest>& req,
                                       const EvalConfig& cfg);

LineResult perron_integral(std::uint64_t n, double omega, const EvalConfig& cfg,
                           Kernel kernel = Kernel::riesz, double b = 2);
LineResult shifted_integral(std::uint64_t n, double omega, const EvalConfig& cfg);

// Exact value of the κ_n-kernel line integral at b > 1:
// Σ_{m=1}^{n+2} a_{m-1} Σ_j c_j [x_j - m - m ln(x_j/m)]_+.
double kappa_kernel_prediction(std::uint64_t n, double omega);

struct ResidueResult {
  cplx value;
  double mode_tail = 0;  // estimate of the dropped |k| > modes part
  std::uint64_t modes = 0;
  double F1 = 0, G1 = 0, dF1 = 0;  // F(1), G(1), F'(1)
};

// The explicit residue sum as printed, term for term.
ResidueResult residue_R3(double omega, std::uint64_t n, const EvalConfig& cfg);
// Residues recomputed from the corrected functional equations.
ResidueResult residue_R3_corrected(double omega, std::uint64_t n, const EvalConfig& cfg);
// Residues by trapezoidal circle integrals (radius 1/4) around 1, 0, s_k, s_k - 1, |k| <= k_max.
ResidueResult residue_R3_numeric(double omega, std::uint64_t n, const EvalConfig& cfg,
                                 std::uint64_t k_max);

// F'(1) by central differences with one Richardson step, h and h/2.
double aux_F_prime1(const EvalConfig& cfg, double h = 1e-3, double* richardson_gap = nullptr);

}  // namespace hp
