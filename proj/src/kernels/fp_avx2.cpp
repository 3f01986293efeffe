#include "tatekit/kernels/fp.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define TATEKIT_HAVE_X86 1
#endif

namespace tatekit::kernels::avx2 {

#ifdef TATEKIT_HAVE_X86

namespace {

// Barrett reduction of eight products below 2^32: m = floor(2^32 / p) gives a
// quotient estimate that is short by at most one.
__attribute__((target("avx2"))) inline __m256i reduce(__m256i x, __m256i m, __m256i p) {
  const __m256i even = _mm256_srli_epi64(_mm256_mul_epu32(x, m), 32);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
  const __m256i q = _mm256_blend_epi32(even, odd, 0xAA);
  const __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, p));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, p));
}

std::uint32_t barrett_constant(std::uint32_t p) {
  return static_cast<std::uint32_t>((std::uint64_t{1} << 32) / p);
}

}  // namespace

bool available() { return __builtin_cpu_supports("avx2"); }

__attribute__((target("avx2"))) void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a,
                                              std::uint32_t p, std::size_t n) {
  if (p == 1) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 0;
    return;
  }
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(barrett_constant(p)));
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    const __m256i prod = reduce(_mm256_mullo_epi32(va, vx), vm, vp);
    const __m256i sum = _mm256_add_epi32(vy, prod);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_min_epu32(sum, _mm256_sub_epi32(sum, vp)));
  }
  scalar::axpy_mod(y + i, x + i, a, p, n - i);
}

__attribute__((target("avx2"))) void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) {
  if (p == 1) {
    for (std::size_t i = 0; i < n; ++i) y[i] = 0;
    return;
  }
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(barrett_constant(p)));
  const __m256i va = _mm256_set1_epi32(static_cast<int>(a));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce(_mm256_mullo_epi32(va, vy), vm, vp));
  }
  scalar::scale_mod(y + i, a, p, n - i);
}

#else

bool available() { return false; }
void axpy_mod(std::uint32_t* y, const std::uint32_t* x, std::uint32_t a, std::uint32_t p, std::size_t n) {
  scalar::axpy_mod(y, x, a, p, n);
}
void scale_mod(std::uint32_t* y, std::uint32_t a, std::uint32_t p, std::size_t n) { scalar::scale_mod(y, a, p, n); }

#endif

}  // namespace tatekit::kernels::avx2
