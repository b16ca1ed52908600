#include "kernels/variants.hpp"

namespace mixdist::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

namespace {
bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(MIXDIST_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MIXDIST_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}
}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

Isa preferred_isa() {
  static const Isa best = available_isas().back();
  return best;
}

AbsDiffSumFn abs_diff_sum_for(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar: return &abs_diff_sum_scalar;
#if defined(MIXDIST_HAVE_AVX2)
    case Isa::avx2: return &abs_diff_sum_avx2;
#endif
#if defined(MIXDIST_HAVE_NEON)
    case Isa::neon: return &abs_diff_sum_neon;
#endif
    default: return nullptr;
  }
}

}  // namespace mixdist::kernels
