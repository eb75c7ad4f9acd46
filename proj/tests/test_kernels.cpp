#include "doctest.h"
#include "support.hpp"

#include <vector>

#include "cavspdc/biphoton.hpp"
#include "cavspdc/kernels/comb.hpp"

using namespace cavspdc;
namespace k = cavspdc::kernels;

namespace {

struct PinKernel {
  explicit PinKernel(k::KernelImpl impl) { k::set_kernel(impl); }
  ~PinKernel() { k::reset_kernel(); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("reference comb") {
  std::vector<double> out(1000);
  k::fill_sinc_comb_reference(0.37, out.size(), out.data());
  CHECK(out[0] == 1.0);
  for (std::size_t j = 1; j < out.size(); ++j) CHECK(out[j] == std::sin(0.37 * j) / (0.37 * j));
}

TEST_CASE("reference sum of squares") {
  std::vector<double> x{1, 2, 3, 4, 5, 6, 7};
  CHECK(k::sum_squares_reference(x.data(), x.size()) == 140.0);
  CHECK(k::sum_squares_reference(x.data(), 0) == 0.0);
}

#if defined(CAVSPDC_HAVE_AVX2_TU)
TEST_CASE("avx2 comb matches the reference") {
  if (!k::avx2_supported()) return;
  for (double step : {1e-7, 1e-3, 0.05, 0.7, 1.391557, 3.14159, 10.0, 123.4}) {
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 5ul, 17ul, 1000ul, 65537ul}) {
      CAPTURE(step);
      CAPTURE(n);
      std::vector<double> a(n + 1, -7.0), b(n + 1, -7.0);
      k::fill_sinc_comb_reference(step, n, a.data());
      k::fill_sinc_comb_avx2(step, n, b.data());
      double worst = 0.0;
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
      CHECK(worst <= 4e-16);
      CHECK(b[n] == -7.0);
    }
  }
}

TEST_CASE("avx2 sum of squares matches the reference") {
  if (!k::avx2_supported()) return;
  for (std::size_t n : {0ul, 1ul, 7ul, 8ul, 9ul, 1001ul, 200001ul}) {
    std::vector<double> x(n);
    k::fill_sinc_comb_reference(0.013, n, x.data());
    const double a = k::sum_squares_reference(x.data(), n), b = k::sum_squares_avx2(x.data(), n);
    CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, a));
  }
}
#endif

TEST_CASE("dispatch can be pinned") {
  {
    PinKernel pin(k::KernelImpl::Reference);
    CHECK(k::active_kernel() == k::KernelImpl::Reference);
  }
  CHECK(k::active_kernel() == (k::avx2_supported() ? k::KernelImpl::AVX2 : k::KernelImpl::Reference));
}

TEST_CASE("fidelities agree across kernels") {
  double ref[4], fast[4];
  const double ratios[4] = {0.3, 1.0, 2.0, 4.5};
  {
    PinKernel pin(k::KernelImpl::Reference);
    for (int i = 0; i < 4; ++i) ref[i] = fidelity_for_ratio(ratios[i]);
  }
  for (int i = 0; i < 4; ++i) fast[i] = fidelity_for_ratio(ratios[i]);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ref[i] - fast[i]) <= 1e-13);
}

}
