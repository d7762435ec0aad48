#pragma once

#include "bongard/kernels.hpp"

namespace bongard::kernels {

/// Defined only when the AVX2 translation unit is built; callers must check
/// the CPU first.
const KernelTable& avx2_table_unchecked();

}  // namespace bongard::kernels
