// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include "upq/kernels.hpp"

namespace upq::kernels::avx2 {
namespace {

// std::complex<double> is layout-compatible with double[2], so one __m256d
// holds two complex numbers as (re0, im0, re1, im1).
inline const double* raw(const Complex* p) { return reinterpret_cast<const double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

Complex dotc(const Complex* x, const Complex* y, std::size_t len) {
  // re accumulates (xr*yr, xi*yi); im accumulates (xr*yi, xi*yr) and the
  // odd lanes are subtracted at the end.
  __m256d acc_re0 = _mm256_setzero_pd();
  __m256d acc_im0 = _mm256_setzero_pd();
  __m256d acc_re1 = _mm256_setzero_pd();
  __m256d acc_im1 = _mm256_setzero_pd();
  const double* px = raw(x);
  const double* py = raw(y);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d xa = _mm256_loadu_pd(px + 2 * i);
    const __m256d ya = _mm256_loadu_pd(py + 2 * i);
    const __m256d xb = _mm256_loadu_pd(px + 2 * i + 4);
    const __m256d yb = _mm256_loadu_pd(py + 2 * i + 4);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
    acc_re1 = _mm256_fmadd_pd(xb, yb, acc_re1);
    acc_im1 = _mm256_fmadd_pd(xb, _mm256_permute_pd(yb, 0b0101), acc_im1);
  }
  for (; i + 2 <= len; i += 2) {
    const __m256d xa = _mm256_loadu_pd(px + 2 * i);
    const __m256d ya = _mm256_loadu_pd(py + 2 * i);
    acc_re0 = _mm256_fmadd_pd(xa, ya, acc_re0);
    acc_im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), acc_im0);
  }
  const __m256d acc_re = _mm256_add_pd(acc_re0, acc_re1);
  const __m256d acc_im = _mm256_mul_pd(_mm256_add_pd(acc_im0, acc_im1),
                                       _mm256_setr_pd(1.0, -1.0, 1.0, -1.0));
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; i < len; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm_sq(const Complex* x, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const double* px = raw(x);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d a = _mm256_loadu_pd(px + 2 * i);
    const __m256d b = _mm256_loadu_pd(px + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= len; i += 2) {
    const __m256d a = _mm256_loadu_pd(px + 2 * i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) acc += std::norm(x[i]);
  return acc;
}

double diff_norm_sq(const Complex* x, const Complex* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const double* px = raw(x);
  const double* py = raw(y);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(px + 2 * i), _mm256_loadu_pd(py + 2 * i));
    const __m256d b =
        _mm256_sub_pd(_mm256_loadu_pd(px + 2 * i + 4), _mm256_loadu_pd(py + 2 * i + 4));
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= len; i += 2) {
    const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(px + 2 * i), _mm256_loadu_pd(py + 2 * i));
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) acc += std::norm(x[i] - y[i]);
  return acc;
}

}  // namespace upq::kernels::avx2
