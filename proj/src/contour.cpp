#include "hp/contour.hpp"

#include <cmath>
#include <numbers>

#include "hp/numen.hpp"
#include "hp/parallel.hpp"
#include "hp/quadrature.hpp"

namespace hp {

const char* kernel_name(Kernel k) { return k == Kernel::riesz ? "riesz" : "kappa"; }

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi = std::numbers::pi;

struct KernelTerms {
  double x[4], c[4];
  int shift;  // exponent offset: x^{s+shift}
};

KernelTerms terms(const LineRequest& r) {
  const double n = double(r.n);
  if (r.kernel == Kernel::riesz) return {{n, n + 1, n + 1.5, n + 2}, {-2, 12, -16, 6}, 2};
  return {{n + 2, n + 1, n, n - 1}, {n + 1, -(3 * n + 1), 3 * n - 1, -(n - 1)}, 1};
}

cplx kernel_value(const LineRequest& r, cplx s) {
  if (r.kernel == Kernel::kappa) return kappa(r.n, s) / (s * (s + 1.0) * (s + 1.0));
  const KernelTerms k = terms(r);
  cplx acc = 0;
  for (int j = 0; j < 4; ++j) acc += k.c[j] * std::exp((s + 2.0) * std::log(k.x[j]));
  return acc / (s * (s + 1.0) * (s + 2.0));
}

double kernel_envelope(const LineRequest& r, double b) {
  const KernelTerms k = terms(r);
  double acc = 0;
  for (int j = 0; j < 4; ++j)
    if (k.x[j] > 0) acc += std::abs(k.c[j]) * std::pow(k.x[j], b + k.shift);
  return acc;
}

cplx c3(const Bundle& B, double omega) { return 1.5 * B.zeta - B.zeta_p - B.xi_p / omega; }

void check_request(const LineRequest& r) {
  if (r.n == 0) throw DomainError("line integral: n must be >= 1");
  if (r.omega == 0) throw DomainError("line integral: omega must be nonzero");
}

}  // namespace

std::vector<LineResult> line_integrals(double b, const std::vector<LineRequest>& req,
                                       const EvalConfig& cfg) {
  cfg.validate();
  for (const auto& r : req) check_request(r);
  if (req.empty()) return {};
  const std::size_t dim = req.size();
  VecFn f = [&](double t, double* out) {
    const cplx s(b, t);
    Bundle B = evaluate_bundle(s, 3, cfg);
    for (std::size_t i = 0; i < dim; ++i) {
      cplx v = kernel_value(req[i], s) * c3(B, req[i].omega);
      out[i] = v.real() / kPi;
    }
  };
  QuadResult q = gk15_adaptive(f, dim, 0, cfg.quad_T, cfg.quad_step, cfg.quad_tol, 12, threads());
  const cplx sT(b, cfg.quad_T);
  Bundle BT = evaluate_bundle(sT, 3, cfg);
  std::vector<LineResult> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out[i].value = q.value[i];
    out[i].quad_error = q.error;
    out[i].evaluations = q.evaluations;
    // integrand is O(|t|^{-3}) times the growth of C; see kernel_envelope
    out[i].tail_error = kernel_envelope(req[i], b) * std::abs(c3(BT, req[i].omega)) /
                        (kPi * cfg.quad_T * cfg.quad_T);
  }
  return out;
}

LineResult perron_integral(std::uint64_t n, double omega, const EvalConfig& cfg, Kernel kernel,
                           double b) {
  if (!(b > 1)) throw DomainError("perron_integral: need b > sigma_3 = 1");
  return line_integrals(b, {{kernel, n, omega}}, cfg)[0];
}

LineResult shifted_integral(std::uint64_t n, double omega, const EvalConfig& cfg) {
  return line_integrals(-0.25, {{Kernel::kappa, n, omega}}, cfg)[0];
}

double kappa_kernel_prediction(std::uint64_t n, double omega) {
  if (n == 0) throw DomainError("kappa_kernel_prediction: n must be >= 1");
  const KernelTerms k = terms({Kernel::kappa, n, omega});
  double acc = 0;
  for (std::uint64_t m = 1; m <= n + 2; ++m) {
    const double md = double(m);
    const Natural t(static_cast<unsigned long>(m - 1));
    const double a = 1.5 - to_double(r(t, 3)) - to_double(chi(t, 3)) / omega;
    double P = 0;
    for (int j = 0; j < 4; ++j)
      if (k.x[j] > md) P += k.c[j] * (k.x[j] - md - md * std::log(k.x[j] / md));
    acc += a * P;
  }
  return acc;
}

double aux_F_prime1(const EvalConfig& cfg, double h, double* richardson_gap) {
  auto D = [&](double hh) {
    return (aux_F(cplx(1 + hh, 0), 3, cfg).value - aux_F(cplx(1 - hh, 0), 3, cfg).value).real() /
           (2 * hh);
  };
  const double d1 = D(h), d2 = D(h / 2);
  if (richardson_gap) *richardson_gap = std::abs(d2 - d1) / 3;
  return (4 * d2 - d1) / 3;
}

namespace {

struct Ingredients {
  double F1, G1, dF1, kp1, kp0;
  std::vector<cplx> sk, zk, Fk, Gk;  // k = -K..K, k != 0 ordered [-K..-1, 1..K]
  std::vector<cplx> kap_s, kap_t;
};

Ingredients ingredients(std::uint64_t n, const EvalConfig& cfg, std::uint64_t K) {
  if (n < 2) throw DomainError("residue_R3: n must be >= 2");
  Ingredients I;
  I.F1 = aux_F(1.0, 3, cfg).value.real();
  I.G1 = aux_G(1.0, 3, cfg).value.real();
  I.dF1 = aux_F_prime1(cfg);
  I.kp1 = kappa(n, 1.0, true).real();
  I.kp0 = kappa(n, 0.0, true).real();
  std::vector<long> ks;
  for (long k = -long(K); k <= long(K); ++k)
    if (k) ks.push_back(k);
  const std::size_t m = ks.size();
  I.sk.resize(m);
  I.zk.resize(m);
  I.Fk.resize(m);
  I.Gk.resize(m);
  I.kap_s.resize(m);
  I.kap_t.resize(m);
  parallel_chunks(m, threads(), [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) {
      const cplx s(1, 2 * kPi * double(ks[i]) / kLn2);
      Bundle B = evaluate_bundle(s, 3, cfg);
      I.sk[i] = s;
      I.zk[i] = B.zeta;
      I.Fk[i] = B.F;
      I.Gk[i] = B.G;
      I.kap_s[i] = kappa(n, s);
      I.kap_t[i] = kappa(n, s - 1.0);
    }
  });
  return I;
}

// Mode sums are accumulated from the outside in, so the partial sum at
// `modes` and the last included pair are both available for the tail estimate.
template <class Term>
ResidueResult assemble(const Ingredients& I, std::uint64_t K, cplx constant, Term term) {
  ResidueResult R;
  R.modes = K;
  R.F1 = I.F1;
  R.G1 = I.G1;
  R.dF1 = I.dF1;
  cplx acc = constant;
  double last = 0;
  const std::size_t m = I.sk.size();
  for (std::size_t i = 0; i < m; ++i) {
    cplx t = term(i);
    acc += t;
    if (i == 0 || i + 1 == m) last += std::abs(t);
  }
  R.value = acc;
  R.mode_tail = double(K) * last / 2;
  return R;
}

}  // namespace

ResidueResult residue_R3(double omega, std::uint64_t n, const EvalConfig& cfg) {
  if (omega == 0) throw DomainError("residue_R3: omega must be nonzero");
  const std::uint64_t K = cfg.k_modes;
  Ingredients I = ingredients(n, cfg, K);
  const double g = std::numbers::egamma, w = 1 / omega;
  const double constant = 1.5 - I.G1 / (4 * kLn2) +
                          w / kLn2 * (2 - g + kLn2 / 2 + (4 + kLn2) / 2 * I.F1 - I.dF1) -
                          w * (1 + I.F1) / (4 * kLn2) * I.kp1 + w * 2 / kLn2 * I.kp0;
  return assemble(I, K, constant, [&](std::size_t i) {
    const cplx s = I.sk[i], s1 = s + 1.0;
    const cplx den = s * s1 * s1;
    return -w / kLn2 * (I.zk[i] + I.Fk[i]) * I.kap_s[i] / den -
           I.Gk[i] * I.kap_s[i] / (4 * kLn2 * den) +
           w * 2 / kLn2 * (I.zk[i] + I.Fk[i]) * I.kap_t[i] / (s * s) +
           I.Gk[i] * I.kap_t[i] / (16 * kLn2 * s * s);
  });
}

ResidueResult residue_R3_corrected(double omega, std::uint64_t n, const EvalConfig& cfg) {
  if (omega == 0) throw DomainError("residue_R3_corrected: omega must be nonzero");
  const std::uint64_t K = cfg.k_modes;
  Ingredients I = ingredients(n, cfg, K);
  const double g = std::numbers::egamma, w = 1 / omega;
  const double constant =
      1.5 - (2 + I.G1) / (4 * kLn2) -
      w * (g + I.F1 + I.kp1 / 4 - 2 - kLn2 / 2) / (4 * kLn2) + w * I.kp0 / (16 * kLn2);
  return assemble(I, K, constant, [&](std::size_t i) {
    const cplx s = I.sk[i], s1 = s + 1.0;
    const cplx A = 2.0 + I.Gk[i], Z = I.zk[i] + I.Fk[i];
    return I.kap_s[i] / (s * s1 * s1) * (-A - w * Z) / (4 * kLn2) +
           I.kap_t[i] * (A + w * Z) / (16 * kLn2 * s * s);
  });
}

ResidueResult residue_R3_numeric(double omega, std::uint64_t n, const EvalConfig& cfg,
                                 std::uint64_t k_max) {
  if (omega == 0) throw DomainError("residue_R3_numeric: omega must be nonzero");
  if (n < 2) throw DomainError("residue_R3_numeric: n must be >= 2");
  const double rho = 0.25;
  const int M = 32;
  std::vector<cplx> centres{1.0, 0.0};
  for (long k = -long(k_max); k <= long(k_max); ++k) {
    if (!k) continue;
    const cplx sk(1, 2 * kPi * double(k) / kLn2);
    centres.push_back(sk);
    centres.push_back(sk - 1.0);
  }
  std::vector<cplx> res(centres.size());
  const LineRequest req{Kernel::kappa, n, omega};
  parallel_chunks(centres.size(), threads(), [&](std::size_t lo, std::size_t hi, unsigned) {
    for (std::size_t i = lo; i < hi; ++i) {
      cplx acc = 0;
      for (int j = 0; j < M; ++j) {
        const cplx e = std::polar(1.0, 2 * kPi * (j + 0.5) / M);
        const cplx s = centres[i] + rho * e;
        Bundle B = evaluate_bundle(s, 3, cfg);
        acc += kernel_value(req, s) * c3(B, omega) * rho * e;
      }
      res[i] = acc / double(M);
    }
  });
  ResidueResult R;
  R.modes = k_max;
  for (const cplx& v : res) R.value += v;
  if (res.size() > 2) R.mode_tail = double(k_max) * (std::abs(res[2]) + std::abs(res.back()));
  return R;
}

}  // namespace hp
