// Reference kernels. These spell out the four-lane accumulation explicitly;
// the vector variants must match them bit for bit.

#include <cmath>

#include "lqharm/simd/kernels.hpp"

namespace lqharm::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

double combine(const double (&acc)[kLanes]) { return (acc[0] + acc[1]) + (acc[2] + acc[3]); }

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] += a[i + j] * b[i + j];
  if (i < n) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double av = i + j < n ? a[i + j] : 0.0;
      const double bv = i + j < n ? b[i + j] : 0.0;
      acc[j] += av * bv;
    }
  }
  return combine(acc);
}

double sum_scalar(const double* a, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] += a[i + j];
  if (i < n)
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] += i + j < n ? a[i + j] : 0.0;
  return combine(acc);
}

void abs_pow_scalar(const double* x, double q, double* out, std::size_t n) {
  if (q == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 1.0;
  } else if (q == 1.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(x[i]);
  } else if (q == 2.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(std::abs(x[i]), q);
  }
}

double gather_dot_scalar(const std::uint32_t* idx, const double* w, const double* x, std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] += w[i + j] * x[idx[i + j]];
  if (i < n) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double wv = i + j < n ? w[i + j] : 0.0;
      const double xv = i + j < n ? x[idx[i + j]] : 0.0;
      acc[j] += wv * xv;
    }
  }
  return combine(acc);
}

double gather_diff_scalar(const std::uint32_t* idx, const double* w, const double* x, double center,
                          std::size_t n) {
  double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    for (std::size_t j = 0; j < kLanes; ++j) acc[j] += (x[idx[i + j]] - center) * w[i + j];
  if (i < n) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      const double wv = i + j < n ? w[i + j] : 0.0;
      const double xv = i + j < n ? x[idx[i + j]] : 0.0;
      acc[j] += (xv - center) * wv;
    }
  }
  return combine(acc);
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar,      "scalar",           dot_scalar,
                                 sum_scalar,       abs_pow_scalar,     gather_dot_scalar,
                                 gather_diff_scalar, max_abs_scalar};
  return table;
}

}  // namespace lqharm::simd::detail
