#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "devperf/kernels.hpp"

namespace devperf {

/// Fixed-size row-index set, the unit the mining kernels operate on.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  size_t size() const { return nbits_; }
  size_t word_count() const { return words_.size(); }
  const uint64_t* words() const { return words_.data(); }
  uint64_t* words() { return words_.data(); }

  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  uint64_t count() const {
    return kernels::active().popcount(words_.data(), words_.size());
  }

  static uint64_t and_count(const Bitmap& a, const Bitmap& b) {
    return kernels::active().and_popcount(a.words(), b.words(), a.word_count());
  }

  /// this = a & b; returns the resulting count. Sizes must match.
  uint64_t assign_and(const Bitmap& a, const Bitmap& b) {
    nbits_ = a.nbits_;
    words_.resize(a.words_.size());
    return kernels::active().and_into(words_.data(), a.words(), b.words(), words_.size());
  }

  template <class Fn>
  void for_each_set(Fn&& fn) const {
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t bits = words_[w];
      while (bits) {
        fn((w << 6) + static_cast<size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

 private:
  size_t nbits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace devperf
