#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "plsphere/rng.hpp"

using plsphere::Rng;
using plsphere::SplitMix64;

TEST_CASE("splitmix64 reference outputs for seed 0") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xe220a8397b1dcdafULL);
  CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(sm.next() == 0x06c45d188009454fULL);
}

TEST_CASE("xoshiro256** seeded through splitmix64 is frozen") {
  Rng a(0);
  CHECK(a.next() == 0x99ec5f36cb75f2b4ULL);
  CHECK(a.next() == 0xbf6e1f784956452aULL);
  CHECK(a.next() == 0x1a5f849d4933e6e0ULL);
  CHECK(a.next() == 0x6aa594f1262d2d2cULL);
  Rng b(42);
  CHECK(b.next() == 0x15780b2e0c2ec716ULL);
  CHECK(b.next() == 0x6104d9866d113a7eULL);
  CHECK(b.next() == 0xae17533239e499a1ULL);
  CHECK(b.next() == 0xecb8ad4703b360a1ULL);
}

TEST_CASE("below stays in range and hits every residue") {
  Rng r(7);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = r.below(7);
    REQUIRE(x < 7);
    ++seen[x];
  }
  for (int c : seen) CHECK(c > 800);
  CHECK(r.below(1) == 0);
}

TEST_CASE("uniform01 is in [0,1)") {
  Rng r(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("shuffle permutes and is seed-deterministic") {
  std::vector<int> a(20), b(20);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  Rng r1(11), r2(11);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  CHECK(a == b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ident(20);
  std::iota(ident.begin(), ident.end(), 0);
  CHECK(sorted == ident);
  CHECK(a != ident);
}
