#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace devperf {

/// splitmix64, the 64-bit mixer from SplittableRandom (Steele, Lea & Flood).
/// The whole generator fits in a few fully specified lines, so seeded runs
/// reproduce bit-for-bit across platforms and standard-library versions.
/// std::shuffle / std::uniform_int_distribution are avoided for that reason.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Draw from [0, bound) by Lemire's multiply-shift. bound must be > 0.
  uint64_t next_below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

/// Fisher-Yates permutation of 0..n-1 driven by SplitMix64.
inline std::vector<uint32_t> shuffled_indices(size_t n, uint64_t seed) {
  std::vector<uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  SplitMix64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace devperf
