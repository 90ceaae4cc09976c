#include <atomic>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace hp::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(HP_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<int> g_active{-1};

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(HP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best() {
  if (available(Isa::avx2)) return Isa::avx2;
  if (available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active() {
  int a = g_active.load();
  if (a < 0) {
    a = static_cast<int>(best());
    g_active = a;
  }
  return static_cast<Isa>(a);
}

void set_active(Isa isa) {
  if (!available(isa)) throw std::invalid_argument(std::string("ISA not available: ") + name(isa));
  g_active = static_cast<int>(isa);
}

const char* name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

void power_table(Isa isa, const double* lnx, std::size_t n, double sigma, double t, double* re,
                 double* im) {
  switch (isa) {
#if defined(HP_HAVE_AVX2)
    case Isa::avx2: return power_table_avx2(lnx, n, sigma, t, re, im);
#endif
#if defined(HP_HAVE_NEON)
    case Isa::neon: return power_table_neon(lnx, n, sigma, t, re, im);
#endif
    default: return power_table_scalar(lnx, n, sigma, t, re, im);
  }
}

void weighted_sums(Isa isa, const double* const* w, std::size_t nw, const double* re,
                   const double* im, std::size_t n, std::complex<double>* out) {
  switch (isa) {
#if defined(HP_HAVE_AVX2)
    case Isa::avx2: return weighted_sums_avx2(w, nw, re, im, n, out);
#endif
#if defined(HP_HAVE_NEON)
    case Isa::neon: return weighted_sums_neon(w, nw, re, im, n, out);
#endif
    default: return weighted_sums_scalar(w, nw, re, im, n, out);
  }
}

void dyadic_tail(Isa isa, const TailBlock& b, std::complex<double>* out) {
  if (b.terms == 0) {
    for (int c = 0; c < 5; ++c) out[c] = 0;
    return;
  }
  switch (isa) {
#if defined(HP_HAVE_AVX2)
    case Isa::avx2: return dyadic_tail_avx2(b, out);
#endif
#if defined(HP_HAVE_NEON)
    case Isa::neon: return dyadic_tail_neon(b, out);
#endif
    default: return dyadic_tail_scalar(b, out);
  }
}

}  // namespace hp::kernels
