#include "hp/l1method.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "hp/parallel.hpp"

namespace hp {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void require_odd(std::uint64_t p, const char* who) {
  if (p < 3 || p % 2 == 0) throw DomainError(std::string(who) + ": p must be an odd integer >= 3");
}

BitWord spread(const BitWord& w, std::uint64_t kappa) {
  std::vector<std::uint8_t> out(w.size() * kappa, 0);
  for (std::size_t i = 0; i < w.size(); ++i) out[i * kappa] = w.bits[i];
  return BitWord(std::move(out));
}

}  // namespace

bool KappaParams::satisfies_hypotheses() const {
  if (p < 3 || p % 2 == 0 || kappa < 1 || kappa > 62) return false;
  const std::uint64_t ceil_log2 = std::bit_width(p - 1);
  return kappa >= ceil_log2 && (std::uint64_t(1) << kappa) - 1 > p;
}

void KappaParams::require(const char* who) const {
  require_odd(p, who);
  if (!satisfies_hypotheses())
    throw DomainError(std::string(who) + ": need kappa >= ceil(log2 p) and 2^kappa - 1 > p (p=" +
                      std::to_string(p) + ", kappa=" + std::to_string(kappa) + ")");
}

TwoAdicSpec tau_kappa(const TwoAdicSpec& z, std::uint64_t kappa) {
  if (kappa < 2) throw DomainError("tau_kappa: kappa must be >= 2");
  if (kappa > 64) throw DomainError("tau_kappa: kappa too large");
  return TwoAdicSpec::from_digits(spread(z.prefix(), kappa), spread(z.period(), kappa));
}

Rational chi_prime_real(const TwoAdicSpec& z, std::uint64_t p) {
  require_odd(p, "chi_prime_real");
  if (z.is_natural()) return chi(z.value().get_num(), p);
  const BitWord& pre = z.prefix();
  const BitWord& per = z.period();
  Rational head = 0, cyc = 0;
  Natural pk = 1;
  for (std::size_t b = 0; b < pre.size(); ++b)
    if (pre[b]) {
      head += make_rational(pk, pow2(b + 1));
      pk *= static_cast<unsigned long>(p);
    }
  const Natural p_head = pk;
  pk = 1;
  for (std::size_t b = 0; b < per.size(); ++b)
    if (per[b]) {
      cyc += make_rational(pk, pow2(b + 1));
      pk *= static_cast<unsigned long>(p);
    }
  // one period contributes cyc, scaled by (p^a / 2^L)^r on the r-th repetition
  const Rational ratio = make_rational(pk, pow2(per.size()));
  if (ratio >= 1)
    throw DomainError("chi_prime_real: series diverges (period ratio " + to_string(ratio) +
                      " >= 1), z is not in U_p");
  return head + make_rational(p_head, pow2(pre.size())) * cyc / (1 - ratio);
}

Rational chi_kappa_hat0(const KappaParams& k) {
  k.require("chi_kappa_hat");
  return make_rational(pow2(k.kappa - 1), pow2(k.kappa + 1) - 1 - Integer(static_cast<unsigned long>(k.p)));
}

Rational chi_kappa_hat_half(const KappaParams& k) {
  k.require("chi_kappa_hat");
  return make_rational(1 - pow2(k.kappa),
                       2 * (pow2(k.kappa + 1) - 1 - Integer(static_cast<unsigned long>(k.p))));
}

cplx chi_kappa_hat(const DyadicCharacter& t, const KappaParams& k) {
  k.require("chi_kappa_hat");
  if (t.num == 0) return to_double(chi_kappa_hat0(k));
  if (t.m > 20) throw DomainError("chi_kappa_hat: |t|_2 above 2^20 is not supported");
  const std::uint64_t den = std::uint64_t(1) << t.m, a = t.num.get_ui();
  const double scale = std::ldexp(1.0, -int(k.kappa + 1));
  cplx v = to_double(chi_kappa_hat_half(k));
  // n = 0 .. m-2: factor (1 + p e^{-2πi 2^n t}) / 2^{κ+1}
  for (std::uint64_t n = 0; n + 2 <= t.m; ++n) {
    const std::uint64_t r = (a << n) & (den - 1);
    v *= (1.0 + double(k.p) * std::polar(1.0, -kTwoPi * double(r) / double(den))) * scale;
  }
  return v;
}

Rational l1_bound(const KappaParams& k) {
  k.require("l1_bound");
  const Integer P(static_cast<unsigned long>(k.p));
  return make_rational(pow2(k.kappa - 1) * (pow2(k.kappa + 1) - 2 - P),
                       (pow2(k.kappa) - P - 1) * (pow2(k.kappa + 1) - P - 1));
}

L1Truncation l1_norm_truncated(const KappaParams& k, std::uint64_t M) {
  k.require("l1_norm_truncated");
  if (M > 20) throw DomainError("l1_norm_truncated: M must be <= 20");
  L1Truncation out;
  out.shells.assign(M + 1, 0.0);
  out.shells[0] = std::abs(to_double(chi_kappa_hat0(k)));
  constexpr std::size_t kChunks = 64;
  for (std::uint64_t m = 1; m <= M; ++m) {
    // shell |t|_2 = 2^m: t = a / 2^m with a odd; fixed chunks keep the sum order stable
    const std::uint64_t count = std::uint64_t(1) << (m - 1);
    const std::size_t chunks = std::min<std::size_t>(kChunks, count);
    std::vector<double> part(chunks, 0.0);
    parallel_chunks(chunks, threads(), [&](std::size_t lo, std::size_t hi, unsigned) {
      for (std::size_t c = lo; c < hi; ++c) {
        const std::uint64_t b = count * c / chunks, e = count * (c + 1) / chunks;
        double s = 0;
        for (std::uint64_t i = b; i < e; ++i)
          s += std::abs(chi_kappa_hat(DyadicCharacter{Natural(static_cast<unsigned long>(2 * i + 1)), m}, k));
        part[c] = s;
      }
    });
    for (double s : part) out.shells[m] += s;
  }
  for (double s : out.shells) out.value += s;
  // shell 2^{m+1} is at most |χ̂(1/2)| r^m with r = (p+1)/2^κ
  const double r = double(k.p + 1) / std::ldexp(1.0, int(k.kappa));
  out.tail = std::abs(to_double(chi_kappa_hat_half(k))) * std::pow(r, double(M)) / (1 - r);
  return out;
}

double chi_kappa_partial_sum(const TwoAdicSpec& z, const KappaParams& k, std::uint64_t M) {
  k.require("chi_kappa_partial_sum");
  if (M > 20) throw DomainError("chi_kappa_partial_sum: M must be <= 20");
  const std::uint64_t N = std::uint64_t(1) << M, zr = z.mod_pow2(M).get_ui();
  cplx acc = 0;
  for (std::uint64_t a = 0; a < N; ++a) {
    const DyadicCharacter t = DyadicCharacter::make(Natural(static_cast<unsigned long>(a)), M);
    const std::uint64_t phase = (a * zr) & (N - 1);
    acc += chi_kappa_hat(t, k) * std::polar(1.0, kTwoPi * double(phase) / double(N));
  }
  return acc.real();
}

double chi_kappa_mean(const KappaParams& k, std::uint64_t N) {
  require_odd(k.p, "chi_kappa_mean");
  if (k.kappa < 2) throw DomainError("chi_kappa_mean: kappa must be >= 2");
  if (N > 26) throw DomainError("chi_kappa_mean: N must be <= 26");
  const std::size_t n = std::size_t(1) << N;
  std::vector<double> v(n, 0.0);
  const double s = std::ldexp(1.0, -int(k.kappa));
  for (std::size_t z = 1; z < n; ++z)
    v[z] = (z & 1) ? (double(k.p) * v[z >> 1] + std::ldexp(1.0, int(k.kappa) - 1)) * s
                   : v[z >> 1] * s;
  double acc = 0;
  for (double x : v) acc += x;
  return acc / double(n);
}

bool word_in_D_kappa(const BitWord& j, std::uint64_t kappa) {
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i]) ones.push_back(i);
  if (ones.empty()) return true;
  for (std::size_t i = 0; i + 1 < ones.size(); ++i)
    if (ones[i + 1] - ones[i] < kappa) return false;
  return j.size() - ones.back() + ones.front() >= kappa;
}

bool word_in_tau_image(const BitWord& j, std::uint64_t kappa) {
  bool any = false;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i]) {
      any = true;
      if (i % kappa) return false;
    }
  return !any || j.size() % kappa == 0;
}

RoutedCycles routed_periodic_points(const KappaParams& k, const Natural& t_max) {
  k.require("routed_periodic_points");
  RoutedCycles out;
  out.bound = l1_bound(k);
  out.all = find_periodic_points(k.p, t_max);
  for (const auto& c : out.all)
    if (c.omega > 0 && word_in_D_kappa(c.word, k.kappa)) out.routed.push_back(c);
  return out;
}

}  // namespace hp
