#include "robreg/kernels.hpp"

// AVX2 + FMA variants of the dense kernels. This file is compiled with
// -mavx2 -mfma on x86-64; everything here is reached only after
// __builtin_cpu_supports confirms the ISA, so no illegal instruction can
// leak into the baseline path.

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace robreg::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Materialized inside functions so no AVX instruction runs before the
// cpuid check in detail_avx2_ops().
inline __m256d abs_mask() {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
}
inline __m256d sign_mask() {
  return _mm256_castsi256_pd(_mm256_set1_epi64x(
      static_cast<long long>(0x8000000000000000ULL)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();
  __m256d a3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4),
                         a1);
    a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8),
                         a2);
    a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12),
                         _mm256_loadu_pd(y + i + 12), a3);
  }
  for (; i + 4 <= n; i += 4) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  }
  double acc = hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4),
                                     _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double sum_sq_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d v0 = _mm256_loadu_pd(x + i);
    const __m256d v1 = _mm256_loadu_pd(x + i + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    a0 = _mm256_fmadd_pd(v, v, a0);
  }
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double sum_abs_avx2(const double* x, std::size_t n) {
  const __m256d amask = abs_mask();
  __m256d a0 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = _mm256_add_pd(a0, _mm256_and_pd(_mm256_loadu_pd(x + i), amask));
  }
  double acc = hsum(a0);
  for (; i < n; ++i) acc += std::abs(x[i]);
  return acc;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d amask = abs_mask();
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    m = _mm256_max_pd(m, _mm256_and_pd(_mm256_loadu_pd(x + i), amask));
  }
  double acc = hmax(m);
  for (; i < n; ++i) acc = std::max(acc, std::abs(x[i]));
  return acc;
}

void soft_threshold_avx2(const double* x, double tau, double* out,
                         std::size_t n) {
  const __m256d amask = abs_mask();
  const __m256d smask = sign_mask();
  const __m256d vtau = _mm256_set1_pd(tau);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d mag = _mm256_sub_pd(_mm256_and_pd(v, amask), vtau);
    const __m256d pos = _mm256_cmp_pd(mag, zero, _CMP_GT_OQ);
    // reattach the sign only where the magnitude survived, keeping +0 elsewhere
    const __m256d signed_mag = _mm256_or_pd(mag, _mm256_and_pd(v, smask));
    _mm256_storeu_pd(out + i, _mm256_and_pd(signed_mag, pos));
  }
  for (; i < n; ++i) {
    const double a = std::abs(x[i]) - tau;
    out[i] = a > 0.0 ? std::copysign(a, x[i]) : 0.0;
  }
}

constexpr Ops kAvx2Ops = {
    dot_avx2,     axpy_avx2,    sum_sq_avx2, sum_abs_avx2,
    max_abs_avx2, soft_threshold_avx2, "avx2",
};

}  // namespace

const Ops* detail_avx2_ops() {
  static const Ops* ops = [] {
    return (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
               ? &kAvx2Ops
               : nullptr;
  }();
  return ops;
}

}  // namespace robreg::kernels

#else

namespace robreg::kernels {
const Ops* detail_avx2_ops() { return nullptr; }
}  // namespace robreg::kernels

#endif
