#include <bit>
#include <vector>

#include <doctest.h>

#include "devperf/bitmap.hpp"
#include "devperf/kernels.hpp"
#include "devperf/rng.hpp"

using namespace devperf;

namespace {

std::vector<uint64_t> random_words(SplitMix64& rng, size_t n, int density) {
  std::vector<uint64_t> w(n);
  for (auto& x : w) {
    x = rng.next();
    for (int d = 1; d < density; ++d) x &= rng.next();  // thin out as density grows
  }
  return w;
}

uint64_t naive_popcount(const std::vector<uint64_t>& a) {
  uint64_t c = 0;
  for (uint64_t w : a) c += static_cast<uint64_t>(std::popcount(w));
  return c;
}

}  // namespace

TEST_CASE("every available kernel agrees with a naive bit count") {
  REQUIRE(!kernels::available().empty());
  CHECK(kernels::available().front() == &kernels::scalar());

  SplitMix64 rng(2024);
  for (size_t n : std::vector<size_t>{0, 1, 2, 3, 4, 7, 8, 15, 16, 33, 129}) {
    auto a = random_words(rng, n, 1);
    auto b = random_words(rng, n, 2);

    uint64_t want_pop = naive_popcount(a);
    uint64_t want_and = 0;
    std::vector<uint64_t> want_dst(n);
    for (size_t i = 0; i < n; ++i) {
      want_dst[i] = a[i] & b[i];
      want_and += static_cast<uint64_t>(std::popcount(want_dst[i]));
    }

    for (const kernels::Ops* ops : kernels::available()) {
      CAPTURE(ops->name);
      CAPTURE(n);
      CHECK(ops->popcount(a.data(), n) == want_pop);
      CHECK(ops->and_popcount(a.data(), b.data(), n) == want_and);

      std::vector<uint64_t> dst(n, ~uint64_t{0});
      CHECK(ops->and_into(dst.data(), a.data(), b.data(), n) == want_and);
      CHECK(dst == want_dst);

      // aliasing dst == a, the miner's in-place pattern
      std::vector<uint64_t> alias = a;
      CHECK(ops->and_into(alias.data(), alias.data(), b.data(), n) == want_and);
      CHECK(alias == want_dst);
    }
  }
}

TEST_CASE("kernels handle all-zero and all-one extremes") {
  std::vector<uint64_t> zeros(9, 0), ones(9, ~uint64_t{0});
  for (const kernels::Ops* ops : kernels::available()) {
    CAPTURE(ops->name);
    CHECK(ops->popcount(zeros.data(), zeros.size()) == 0);
    CHECK(ops->popcount(ones.data(), ones.size()) == 9 * 64);
    CHECK(ops->and_popcount(zeros.data(), ones.data(), 9) == 0);
    std::vector<uint64_t> dst(9);
    CHECK(ops->and_into(dst.data(), ones.data(), ones.data(), 9) == 9 * 64);
  }
}

TEST_CASE("the active kernel is one of the available ones") {
  const kernels::Ops& act = kernels::active();
  bool found = false;
  for (const kernels::Ops* ops : kernels::available())
    if (ops == &act) found = true;
  CHECK(found);

  kernels::set_active(kernels::scalar());
  CHECK(&kernels::active() == &kernels::scalar());
  kernels::set_active(act);
}

TEST_CASE("bitmap set, test and count stay consistent") {
  Bitmap bm(130);
  CHECK(bm.count() == 0);
  for (size_t i : std::vector<size_t>{0, 1, 63, 64, 65, 127, 128, 129}) bm.set(i);
  CHECK(bm.count() == 8);
  CHECK(bm.test(64));
  CHECK_FALSE(bm.test(2));

  std::vector<size_t> seen;
  bm.for_each_set([&](size_t i) { seen.push_back(i); });
  CHECK(seen == std::vector<size_t>{0, 1, 63, 64, 65, 127, 128, 129});
}

TEST_CASE("bitmap intersection matches the row-set view") {
  SplitMix64 rng(7);
  Bitmap a(200), b(200);
  std::vector<bool> in_a(200), in_b(200);
  for (size_t i = 0; i < 200; ++i) {
    if (rng.next_below(3) == 0) {
      a.set(i);
      in_a[i] = true;
    }
    if (rng.next_below(2) == 0) {
      b.set(i);
      in_b[i] = true;
    }
  }
  uint64_t want = 0;
  for (size_t i = 0; i < 200; ++i)
    if (in_a[i] && in_b[i]) ++want;

  CHECK(Bitmap::and_count(a, b) == want);
  Bitmap c;
  CHECK(c.assign_and(a, b) == want);
  CHECK(c.size() == 200);
  for (size_t i = 0; i < 200; ++i) CHECK(c.test(i) == (in_a[i] && in_b[i]));

  // in place: a &= b
  CHECK(a.assign_and(a, b) == want);
  for (size_t i = 0; i < 200; ++i) CHECK(a.test(i) == (in_a[i] && in_b[i]));
}
