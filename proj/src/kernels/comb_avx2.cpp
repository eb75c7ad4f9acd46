#include <immintrin.h>

#include <cmath>

#include "cavspdc/kernels/comb.hpp"

namespace cavspdc::kernels {

namespace {

// pi/2 split in three doubles; with FMA the reduction is accurate to ~1 ulp for |x| < 1e8.
constexpr double kPio2Hi = 1.5707963267948966;
constexpr double kPio2Mid = 6.123233995736766e-17;
constexpr double kPio2Lo = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.63661977236758134308;

constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;

constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

constexpr double kMaxArgument = 1e8;

inline __m256d set1(double v) { return _mm256_set1_pd(v); }

inline __m256d sin_pd(__m256d x) {
  const __m256d k =
      _mm256_round_pd(_mm256_mul_pd(x, set1(kTwoOverPi)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, set1(kPio2Hi), x);
  r = _mm256_fnmadd_pd(k, set1(kPio2Mid), r);
  r = _mm256_fnmadd_pd(k, set1(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_fmadd_pd(z, set1(kS6), set1(kS5));
  ps = _mm256_fmadd_pd(z, ps, set1(kS4));
  ps = _mm256_fmadd_pd(z, ps, set1(kS3));
  ps = _mm256_fmadd_pd(z, ps, set1(kS2));
  ps = _mm256_fmadd_pd(z, ps, set1(kS1));
  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_fmadd_pd(z, set1(kC6), set1(kC5));
  pc = _mm256_fmadd_pd(z, pc, set1(kC4));
  pc = _mm256_fmadd_pd(z, pc, set1(kC3));
  pc = _mm256_fmadd_pd(z, pc, set1(kC2));
  pc = _mm256_fmadd_pd(z, pc, set1(kC1));
  const __m256d hz = _mm256_mul_pd(set1(0.5), z);
  const __m256d w = _mm256_sub_pd(set1(1.0), hz);
  const __m256d tail = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc,
                                       _mm256_sub_pd(_mm256_sub_pd(set1(1.0), w), hz));
  const __m256d c = _mm256_add_pd(w, tail);

  // quadrant q = k mod 4
  const __m256d q = _mm256_fnmadd_pd(
      set1(4.0), _mm256_floor_pd(_mm256_mul_pd(k, set1(0.25))), k);
  const __m256d odd = _mm256_or_pd(_mm256_cmp_pd(q, set1(1.0), _CMP_EQ_OQ),
                                   _mm256_cmp_pd(q, set1(3.0), _CMP_EQ_OQ));
  const __m256d upper = _mm256_cmp_pd(q, set1(1.5), _CMP_GT_OQ);
  const __m256d v = _mm256_blendv_pd(s, c, odd);
  const __m256d sign = _mm256_and_pd(upper, set1(-0.0));
  return _mm256_xor_pd(v, sign);
}

}  // namespace

void fill_sinc_comb_avx2(double step, std::size_t n, double* out) {
  if (n == 0) return;
  if (!(std::abs(step) * static_cast<double>(n) < kMaxArgument) || step == 0.0) {
    fill_sinc_comb_reference(step, n, out);
    return;
  }
  std::size_t j = 0;
  const __m256d vstep = set1(step);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  for (; j + 4 <= n; j += 4) {
    const __m256d idx = _mm256_add_pd(set1(static_cast<double>(j)), lane);
    const __m256d x = _mm256_mul_pd(idx, vstep);
    _mm256_storeu_pd(out + j, _mm256_div_pd(sin_pd(x), x));
  }
  for (; j < n; ++j) {
    const double x = static_cast<double>(j) * step;
    out[j] = std::sin(x) / x;
  }
  out[0] = 1.0;
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(x + j);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  for (; j < n; ++j) lanes[0] += x[j] * x[j];
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace cavspdc::kernels
