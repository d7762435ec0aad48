#include <cstdlib>
#include <string_view>

#include "kernels/kernels_internal.hpp"

namespace bongard::kernels {

const KernelTable* avx2_table() {
#if defined(BONGARD_HAVE_AVX2_KERNELS)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("BONGARD_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const KernelTable* avx2 = avx2_table()) return *avx2;
    return scalar_table();
  }();
  return table;
}

}  // namespace bongard::kernels
