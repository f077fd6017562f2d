// NEON variants of the bitmap kernels. On aarch64 NEON is baseline, so this
// unit needs no special flags and the variant is always usable.

#include "devperf/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

namespace devperf::kernels::detail {

namespace {

inline uint64_t pairwise_count(uint8x16_t bytes) {
  // per-byte popcount, widened pairwise up to a single 64-bit total
  return vaddvq_u64(vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(bytes)))));
}

uint64_t popcount_neon(const uint64_t* a, size_t n) {
  uint64_t c = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(a + i));
    c += pairwise_count(v);
  }
  for (; i < n; ++i) c += static_cast<uint64_t>(__builtin_popcountll(a[i]));
  return c;
}

uint64_t and_popcount_neon(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t w = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    c += pairwise_count(vreinterpretq_u8_u64(w));
  }
  for (; i < n; ++i) c += static_cast<uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return c;
}

uint64_t and_into_neon(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t w = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    vst1q_u64(dst + i, w);
    c += pairwise_count(vreinterpretq_u8_u64(w));
  }
  for (; i < n; ++i) {
    uint64_t w = a[i] & b[i];
    dst[i] = w;
    c += static_cast<uint64_t>(__builtin_popcountll(w));
  }
  return c;
}

}  // namespace

const Ops* neon_ops() {
  static const Ops ops{"neon", popcount_neon, and_popcount_neon, and_into_neon};
  return &ops;
}

}  // namespace devperf::kernels::detail

#else

namespace devperf::kernels::detail {
const Ops* neon_ops() { return nullptr; }
}  // namespace devperf::kernels::detail

#endif
