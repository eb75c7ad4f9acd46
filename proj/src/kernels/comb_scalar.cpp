#include <cmath>

#include "cavspdc/kernels/comb.hpp"

namespace cavspdc::kernels {

void fill_sinc_comb_reference(double step, std::size_t n, double* out) {
  if (n == 0) return;
  out[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double x = static_cast<double>(j) * step;
    out[j] = x == 0.0 ? 1.0 : std::sin(x) / x;
  }
}

double sum_squares_reference(const double* x, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    for (int k = 0; k < 4; ++k) acc[k] += x[j + k] * x[j + k];
  for (; j < n; ++j) acc[0] += x[j] * x[j];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace cavspdc::kernels
