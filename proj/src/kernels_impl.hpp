#pragma once

#include "hp/kernels.hpp"

namespace hp::kernels {

void power_table_scalar(const double*, std::size_t, double, double, double*, double*);
void weighted_sums_scalar(const double* const*, std::size_t, const double*, const double*,
                          std::size_t, std::complex<double>*);
void dyadic_tail_scalar(const TailBlock&, std::complex<double>*);

#ifdef HP_HAVE_AVX2
void power_table_avx2(const double*, std::size_t, double, double, double*, double*);
void weighted_sums_avx2(const double* const*, std::size_t, const double*, const double*,
                        std::size_t, std::complex<double>*);
void dyadic_tail_avx2(const TailBlock&, std::complex<double>*);
#endif

#ifdef HP_HAVE_NEON
void power_table_neon(const double*, std::size_t, double, double, double*, double*);
void weighted_sums_neon(const double* const*, std::size_t, const double*, const double*,
                        std::size_t, std::complex<double>*);
void dyadic_tail_neon(const TailBlock&, std::complex<double>*);
#endif

}  // namespace hp::kernels
