#include "upq/kernels.hpp"

namespace upq::kernels::scalar {

Complex dotc(const Complex* x, const Complex* y, std::size_t len) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm_sq(const Complex* x, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

double diff_norm_sq(const Complex* x, const Complex* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

}  // namespace upq::kernels::scalar
