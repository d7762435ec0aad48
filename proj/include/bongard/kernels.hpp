#pragma once

// Dense arithmetic inner loops used by the network substrate. Each kernel has
// a scalar reference and, on x86-64, an AVX2+FMA variant; the active table is
// picked once at startup from CPU features. Set BONGARD_KERNELS=scalar to
// force the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace bongard::kernels {

struct AdamCoefficients {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// 1 - beta^t for the current step t.
  double bias_correction1 = 1.0;
  double bias_correction2 = 1.0;
};

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// In-place Adam update of weights w with moments m, v and gradient g.
  void (*adam)(double* w, double* m, double* v, const double* g, std::size_t n, const AdamCoefficients& c);
};

const KernelTable& scalar_table();
/// Null when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// The table used by the span helpers below.
const KernelTable& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace bongard::kernels
