#include "upq/kernels.hpp"

#include <cassert>

namespace upq::kernels {
namespace {

constexpr KernelTable kScalarTable{&scalar::dotc, &scalar::norm_sq, &scalar::diff_norm_sq};

#if UPQ_HAVE_AVX2
constexpr KernelTable kAvx2Table{&avx2::dotc, &avx2::norm_sq, &avx2::diff_norm_sq};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

}  // namespace

#if !UPQ_HAVE_AVX2
// Stubs so the symbols exist on targets without the AVX2 translation unit;
// isa_available() keeps them unreachable through the dispatcher.
namespace avx2 {
Complex dotc(const Complex* x, const Complex* y, std::size_t len) { return scalar::dotc(x, y, len); }
double norm_sq(const Complex* x, std::size_t len) { return scalar::norm_sq(x, len); }
double diff_norm_sq(const Complex* x, const Complex* y, std::size_t len) {
  return scalar::diff_norm_sq(x, y, len);
}
}  // namespace avx2
#endif

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if UPQ_HAVE_AVX2
    {
      static const bool has = cpu_has_avx2();
      return has;
    }
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& table(Isa isa) {
#if UPQ_HAVE_AVX2
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
  assert(x.size() == y.size());
  return table(active_isa()).dotc(x.data(), y.data(), x.size());
}

double norm_sq(std::span<const Complex> x) {
  return table(active_isa()).norm_sq(x.data(), x.size());
}

double diff_norm_sq(std::span<const Complex> x, std::span<const Complex> y) {
  assert(x.size() == y.size());
  return table(active_isa()).diff_norm_sq(x.data(), y.data(), x.size());
}

}  // namespace upq::kernels
