#include <cmath>
#include <cstdint>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "scalelaw/rng.hpp"

using namespace scalelaw;

TEST_CASE("streams are deterministic and order-independent") {
  SplitMix64 a = SplitMix64::stream(42, 7);
  SplitMix64 b = SplitMix64::stream(42, 7);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());

  // Consuming from one stream must not affect another.
  SplitMix64 s0 = SplitMix64::stream(42, 0);
  for (int i = 0; i < 50; ++i) s0.next_u64();
  SplitMix64 s7 = SplitMix64::stream(42, 7);
  SplitMix64 fresh = SplitMix64::stream(42, 7);
  CHECK(s7.next_u64() == fresh.next_u64());
}

TEST_CASE("distinct seeds and stream indices decorrelate") {
  CHECK(SplitMix64::stream(1, 0).next_u64() != SplitMix64::stream(2, 0).next_u64());
  CHECK(SplitMix64::stream(1, 0).next_u64() != SplitMix64::stream(1, 1).next_u64());
  // Adjacent stream indices should differ in many bits (avalanche).
  int diff_bits = 0;
  for (std::uint64_t k = 0; k < 64; ++k) {
    const std::uint64_t x = SplitMix64::stream(9, k).next_u64();
    const std::uint64_t y = SplitMix64::stream(9, k + 1).next_u64();
    diff_bits += __builtin_popcountll(x ^ y);
  }
  CHECK(diff_bits > 64 * 20);  // ~32 expected per pair
}

TEST_CASE("uniform lies in [0,1) with a sane mean") {
  SplitMix64 s = SplitMix64::stream(123, 0);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("index is bounded and roughly uniform") {
  SplitMix64 s = SplitMix64::stream(5, 0);
  std::vector<int> counts(10, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t k = s.index(10);
    REQUIRE(k < 10);
    ++counts[static_cast<std::size_t>(k)];
  }
  for (int c : counts) CHECK(std::abs(c - n / 10) < 400);
}

TEST_CASE("gaussian has standard moments") {
  SplitMix64 s = SplitMix64::stream(77, 3);
  const int n = 50000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.gaussian();
    REQUIRE(std::isfinite(z));
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == Catch::Approx(0.0).margin(0.02));
  CHECK(var == Catch::Approx(1.0).margin(0.03));
}

TEST_CASE("gaussian consumes exactly two uniforms") {
  SplitMix64 a = SplitMix64::stream(1, 1);
  SplitMix64 b = SplitMix64::stream(1, 1);
  a.gaussian();
  b.uniform();
  b.uniform();
  CHECK(a.next_u64() == b.next_u64());
}
