#include "devperf/kernels.hpp"

#include <bit>

namespace devperf::kernels {

namespace {

uint64_t popcount_scalar(const uint64_t* a, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += static_cast<uint64_t>(std::popcount(a[i]));
  return c;
}

uint64_t and_popcount_scalar(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += static_cast<uint64_t>(std::popcount(a[i] & b[i]));
  return c;
}

uint64_t and_into_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) {
    uint64_t w = a[i] & b[i];
    dst[i] = w;
    c += static_cast<uint64_t>(std::popcount(w));
  }
  return c;
}

const Ops kScalar{"scalar", popcount_scalar, and_popcount_scalar, and_into_scalar};

const Ops* g_active = nullptr;

}  // namespace

#if defined(DEVPERF_HAVE_AVX2_TU)
namespace detail {
const Ops* avx2_ops();  // kernels_avx2.cpp
}
#endif
#if defined(DEVPERF_HAVE_NEON_TU)
namespace detail {
const Ops* neon_ops();  // kernels_neon.cpp
}
#endif

const Ops& scalar() { return kScalar; }

const std::vector<const Ops*>& available() {
  static const std::vector<const Ops*> impls = [] {
    std::vector<const Ops*> v{&kScalar};
#if defined(DEVPERF_HAVE_NEON_TU)
    if (const Ops* ops = detail::neon_ops()) v.push_back(ops);
#endif
#if defined(DEVPERF_HAVE_AVX2_TU)
#if defined(__GNUC__) || defined(__clang__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"))
      if (const Ops* ops = detail::avx2_ops()) v.push_back(ops);
#endif
#endif
    return v;
  }();
  return impls;
}

const Ops& active() {
  if (g_active) return *g_active;
  return *available().back();
}

void set_active(const Ops& ops) { g_active = &ops; }

}  // namespace devperf::kernels
