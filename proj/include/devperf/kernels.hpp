#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace devperf::kernels {

/// Bit-counting kernels over the 64-bit word blocks of row bitmaps. These
/// sit in the miner's support-counting inner loop (intersect a candidate's
/// cover with an item's cover, count survivors), so each operation has a
/// scalar reference implementation plus SIMD variants picked at runtime.
struct Ops {
  const char* name;
  uint64_t (*popcount)(const uint64_t* a, size_t n);
  uint64_t (*and_popcount)(const uint64_t* a, const uint64_t* b, size_t n);
  /// dst = a & b, returns popcount(dst). dst may alias a or b.
  uint64_t (*and_into)(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n);
};

/// The portable reference implementation, always available.
const Ops& scalar();

/// Every implementation usable on this CPU (scalar first). Equivalence
/// tests run all of them against each other.
const std::vector<const Ops*>& available();

/// The variant selected for real work: the last entry of available(),
/// i.e. the widest supported one, unless overridden.
const Ops& active();

/// Override the active variant (benchmarking, forcing the reference path).
void set_active(const Ops& ops);

}  // namespace devperf::kernels
