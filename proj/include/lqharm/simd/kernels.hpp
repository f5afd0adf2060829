#pragma once

// Float64 inner loops used by the float-mode paths: dot products, power sums
// and CSR row reductions. Every variant accumulates in four lanes (element i
// of a row/array goes to lane i % 4, tails are zero-padded) and combines the
// lanes as (l0 + l1) + (l2 + l3), so all variants return bit-identical
// results. No variant may use fused multiply-add.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lqharm::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]
  double (*sum)(const double* a, std::size_t n);
  // out[i] = |x[i]|^q, with 0^0 = 1
  void (*abs_pow)(const double* x, double q, double* out, std::size_t n);
  // sum_k w[k] * x[idx[k]]
  double (*gather_dot)(const std::uint32_t* idx, const double* w, const double* x, std::size_t n);
  // sum_k w[k] * (x[idx[k]] - center)
  double (*gather_diff)(const std::uint32_t* idx, const double* w, const double* x, double center,
                        std::size_t n);
  // max_i |x[i]|, 0 for n == 0
  double (*max_abs)(const double* x, std::size_t n);
};

bool available(Isa isa);

/// Table for a specific ISA; throws if it was not compiled in or the CPU lacks it.
const KernelTable& table(Isa isa);

/// Best available table. LQHARM_SIMD=scalar|avx2 in the environment forces a choice.
const KernelTable& active();

Isa parse_isa(std::string_view name);

namespace detail {
const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif
}  // namespace detail

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }
inline double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace lqharm::simd
