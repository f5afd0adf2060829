// AVX2 kernels. Compiled with -mavx2 only (no -mfma) so that products and
// sums round exactly like the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "lqharm/simd/kernels.hpp"

namespace lqharm::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

__m256i tail_mask(std::size_t rem) {
  const __m256i lane = _mm256_setr_epi64x(0, 1, 2, 3);
  return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(rem)), lane);
}

double combine(__m256d acc) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

__m128i load_indices(const std::uint32_t* idx) {
  return _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx));
}

__m128i load_indices_tail(const std::uint32_t* idx, std::size_t rem) {
  alignas(16) std::uint32_t buf[kLanes] = {0, 0, 0, 0};
  for (std::size_t j = 0; j < rem; ++j) buf[j] = idx[j];
  return _mm_load_si128(reinterpret_cast<const __m128i*>(buf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  if (i < n) {
    const __m256i m = tail_mask(n - i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_maskload_pd(a + i, m), _mm256_maskload_pd(b + i, m)));
  }
  return combine(acc);
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  if (i < n) acc = _mm256_add_pd(acc, _mm256_maskload_pd(a + i, tail_mask(n - i)));
  return combine(acc);
}

void abs_pow_avx2(const double* x, double q, double* out, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  if (q == 1.0) {
    for (; i + kLanes <= n; i += kLanes)
      _mm256_storeu_pd(out + i, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::abs(x[i]);
  } else if (q == 2.0) {
    for (; i + kLanes <= n; i += kLanes) {
      const __m256d v = _mm256_loadu_pd(x + i);
      _mm256_storeu_pd(out + i, _mm256_mul_pd(v, v));
    }
    for (; i < n; ++i) out[i] = x[i] * x[i];
  } else if (q == 0.0) {
    for (; i < n; ++i) out[i] = 1.0;
  } else {
    // No vector pow; the transcendental path is shared with the reference.
    for (; i < n; ++i) out[i] = std::pow(std::abs(x[i]), q);
  }
}

double gather_dot_avx2(const std::uint32_t* idx, const double* w, const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_i32gather_pd(x, load_indices(idx + i), 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), xv));
  }
  if (i < n) {
    const __m256i m = tail_mask(n - i);
    const __m256d xv = _mm256_mask_i32gather_pd(_mm256_setzero_pd(), x, load_indices_tail(idx + i, n - i),
                                                _mm256_castsi256_pd(m), 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_maskload_pd(w + i, m), xv));
  }
  return combine(acc);
}

double gather_diff_avx2(const std::uint32_t* idx, const double* w, const double* x, double center,
                        std::size_t n) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_i32gather_pd(x, load_indices(idx + i), 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_sub_pd(xv, c), _mm256_loadu_pd(w + i)));
  }
  if (i < n) {
    const __m256i m = tail_mask(n - i);
    const __m256d xv = _mm256_mask_i32gather_pd(_mm256_setzero_pd(), x, load_indices_tail(idx + i, n - i),
                                                _mm256_castsi256_pd(m), 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_sub_pd(xv, c), _mm256_maskload_pd(w + i, m)));
  }
  return combine(acc);
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, m);
  double best = 0.0;
  for (double v : lanes)
    if (v > best) best = v;
  for (; i < n; ++i) {
    const double a = std::abs(x[i]);
    if (a > best) best = a;
  }
  return best;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2,      "avx2",           dot_avx2,
                                 sum_avx2,       abs_pow_avx2,     gather_dot_avx2,
                                 gather_diff_avx2, max_abs_avx2};
  return table;
}

}  // namespace lqharm::simd::detail
