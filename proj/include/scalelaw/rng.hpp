#pragma once

#include <cmath>
#include <cstdint>

namespace scalelaw {

// 64-bit avalanche finalizer (the splitmix64 mixing step). Used both to step
// the generator and to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based splittable generator. `stream(seed, k)` yields a generator
// whose draws depend only on (seed, k), never on how many other streams were
// consumed first, so work split across threads stays reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static SplitMix64 stream(std::int64_t seed, std::uint64_t index) noexcept {
    const auto s = static_cast<std::uint64_t>(seed);
    return SplitMix64(mix64(mix64(s + kGolden) ^ (kGolden * (index + 1))));
  }

  std::uint64_t next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53 random mantissa bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased index in [0, n) via 128-bit multiply-shift.
  std::uint64_t index(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal, Box-Muller cosine branch. Draws exactly two uniforms
  // per call; nothing is cached, so stream position stays predictable.
  double gaussian() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t state_;
};

}  // namespace scalelaw
