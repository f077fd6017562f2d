// AVX2 variants of the bitmap kernels. This translation unit is compiled
// with -mavx2 -mpopcnt; callers reach it only after a cpuid check.

#include "devperf/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

namespace devperf::kernels::detail {

namespace {

// Per-byte popcount via the nibble lookup table (Mula), horizontally summed
// into four 64-bit lanes by SAD against zero.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

inline uint64_t hsum(__m256i acc) {
  __m128i lo = _mm256_castsi256_si128(acc);
  __m128i hi = _mm256_extracti128_si256(acc, 1);
  __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<uint64_t>(_mm_extract_epi64(s, 1));
}

uint64_t popcount_avx2(const uint64_t* a, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(v));
  }
  uint64_t c = hsum(acc);
  for (; i < n; ++i) c += static_cast<uint64_t>(_mm_popcnt_u64(a[i]));
  return c;
}

uint64_t and_popcount_avx2(const uint64_t* a, const uint64_t* b, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(va, vb)));
  }
  uint64_t c = hsum(acc);
  for (; i < n; ++i) c += static_cast<uint64_t>(_mm_popcnt_u64(a[i] & b[i]));
  return c;
}

uint64_t and_into_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i w = _mm256_and_si256(va, vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), w);
    acc = _mm256_add_epi64(acc, popcount_lanes(w));
  }
  uint64_t c = hsum(acc);
  for (; i < n; ++i) {
    uint64_t w = a[i] & b[i];
    dst[i] = w;
    c += static_cast<uint64_t>(_mm_popcnt_u64(w));
  }
  return c;
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops{"avx2", popcount_avx2, and_popcount_avx2, and_into_avx2};
  return &ops;
}

}  // namespace devperf::kernels::detail

#else

namespace devperf::kernels::detail {
const Ops* avx2_ops() { return nullptr; }
}  // namespace devperf::kernels::detail

#endif
