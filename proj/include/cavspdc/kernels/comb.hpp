#pragma once

#include <cstddef>
#include <string_view>

namespace cavspdc::kernels {

enum class KernelImpl { Reference, AVX2 };
std::string_view to_string(KernelImpl k);

// out[j] = sin(j*step)/(j*step) for j in [0, n), out[0] = 1
void fill_sinc_comb_reference(double step, std::size_t n, double* out);
double sum_squares_reference(const double* x, std::size_t n);

#if defined(CAVSPDC_HAVE_AVX2_TU)
void fill_sinc_comb_avx2(double step, std::size_t n, double* out);
double sum_squares_avx2(const double* x, std::size_t n);
#endif

bool avx2_supported();

// Implementation used by the dispatched entry points. Defaults to the best
// supported one; can be pinned (tests, or CAVSPDC_KERNEL=reference).
KernelImpl active_kernel();
void set_kernel(KernelImpl k);
void reset_kernel();

void fill_sinc_comb(double step, std::size_t n, double* out);
double sum_squares(const double* x, std::size_t n);

}  // namespace cavspdc::kernels
