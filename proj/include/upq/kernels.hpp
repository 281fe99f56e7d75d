#pragma once

// Data-parallel inner loops shared by the residual computations.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The active variant is chosen once at runtime from CPU features;
// the scalar and SIMD versions agree to rounding (summation order differs).

#include <cstddef>
#include <span>
#include <string_view>

#include "upq/types.hpp"

namespace upq::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // sum_i conj(x_i) * y_i
  Complex (*dotc)(const Complex* x, const Complex* y, std::size_t len);
  // sum_i |x_i|^2
  double (*norm_sq)(const Complex* x, std::size_t len);
  // sum_i |x_i - y_i|^2
  double (*diff_norm_sq)(const Complex* x, const Complex* y, std::size_t len);
};

namespace scalar {
Complex dotc(const Complex* x, const Complex* y, std::size_t len);
double norm_sq(const Complex* x, std::size_t len);
double diff_norm_sq(const Complex* x, const Complex* y, std::size_t len);
}  // namespace scalar

namespace avx2 {
Complex dotc(const Complex* x, const Complex* y, std::size_t len);
double norm_sq(const Complex* x, std::size_t len);
double diff_norm_sq(const Complex* x, const Complex* y, std::size_t len);
}  // namespace avx2

// True when the variant is compiled in and the CPU supports it.
bool isa_available(Isa isa);
// Best available variant, fixed after first call.
Isa active_isa();
std::string_view isa_name(Isa isa);
const KernelTable& table(Isa isa);

Complex dotc(std::span<const Complex> x, std::span<const Complex> y);
double norm_sq(std::span<const Complex> x);
double diff_norm_sq(std::span<const Complex> x, std::span<const Complex> y);

}  // namespace upq::kernels
