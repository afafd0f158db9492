#include "casimir/integrand.hpp"

#include <cstdlib>
#include <string_view>

namespace casimir::kernels {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CASIMIR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("CASIMIR_ISA")) {
      const std::string_view v(env);
      if (v == "scalar") return Isa::Scalar;
      if (v == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

WeightedSumFn weighted_sum(Isa isa) {
#if defined(CASIMIR_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return &weighted_sum_avx2;
#endif
  (void)isa;
  return &weighted_sum_scalar;
}

WeightedSumFn weighted_sum() { return weighted_sum(active_isa()); }

}  // namespace casimir::kernels
