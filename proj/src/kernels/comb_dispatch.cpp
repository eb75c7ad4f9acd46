#include <atomic>
#include <cstdlib>
#include <string_view>

#include "cavspdc/kernels/comb.hpp"

namespace cavspdc::kernels {

std::string_view to_string(KernelImpl k) { return k == KernelImpl::AVX2 ? "avx2" : "reference"; }

bool avx2_supported() {
#if defined(CAVSPDC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

KernelImpl default_kernel() {
  if (const char* env = std::getenv("CAVSPDC_KERNEL"); env && std::string_view(env) == "reference")
    return KernelImpl::Reference;
  return avx2_supported() ? KernelImpl::AVX2 : KernelImpl::Reference;
}

std::atomic<KernelImpl>& current() {
  static std::atomic<KernelImpl> k{default_kernel()};
  return k;
}

}  // namespace

KernelImpl active_kernel() { return current().load(std::memory_order_relaxed); }

void set_kernel(KernelImpl k) {
  if (k == KernelImpl::AVX2 && !avx2_supported()) k = KernelImpl::Reference;
  current().store(k, std::memory_order_relaxed);
}

void reset_kernel() { current().store(default_kernel(), std::memory_order_relaxed); }

void fill_sinc_comb(double step, std::size_t n, double* out) {
#if defined(CAVSPDC_HAVE_AVX2_TU)
  if (active_kernel() == KernelImpl::AVX2) return fill_sinc_comb_avx2(step, n, out);
#endif
  fill_sinc_comb_reference(step, n, out);
}

double sum_squares(const double* x, std::size_t n) {
#if defined(CAVSPDC_HAVE_AVX2_TU)
  if (active_kernel() == KernelImpl::AVX2) return sum_squares_avx2(x, n);
#endif
  return sum_squares_reference(x, n);
}

}  // namespace cavspdc::kernels
