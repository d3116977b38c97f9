#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scalelaw/errors.hpp"

namespace scalelaw {

// Per-layer cost/size contribution, in units of one weight-activation pair.
// A scalar pair is 1 MAC / 1 parameter. A full multivector pair (16x16
// geometric product) is 256 MACs / 9 parameters (one weight per irreducible
// grade pair).
struct LayerPairs {
  double macs_per_pair = 0;
  double params_per_pair = 0;
  std::int64_t pair_count = 0;
};

using LayerMix = std::vector<LayerPairs>;

inline constexpr double kScalarMacsPerPair = 1.0;
inline constexpr double kScalarParamsPerPair = 1.0;
inline constexpr double kMultivectorMacsPerPair = 256.0;
inline constexpr double kMultivectorParamsPerPair = 9.0;

// Training FLOPs per parameter per token for a weighted layer mix:
// xi = 6 * (total MACs) / (total parameters). The 6 counts forward + backward
// passes at 2 FLOPs per MAC each (1x forward, 2x backward).
inline double xi_from_mix(const LayerMix& mix) {
  require(!mix.empty(), "bad_argument", "layer mix is empty");
  double macs = 0, params = 0;
  for (const auto& m : mix) {
    require(m.pair_count > 0, "bad_argument", "pair_count must be positive");
    require(m.macs_per_pair > 0 && m.params_per_pair > 0, "bad_argument",
            "per-pair MACs and parameters must be positive");
    macs += static_cast<double>(m.pair_count) * m.macs_per_pair;
    params += static_cast<double>(m.pair_count) * m.params_per_pair;
  }
  require(params > 0, "bad_argument", "layer mix has zero total parameters");
  return 6.0 * macs / params;
}

enum class XiPreset { baseline, equivariant_mixed, pure_multivector };

inline constexpr double kXiBaseline = 6.0;
// All-multivector network: 6 * 256 / 9.
inline constexpr double kXiPureMultivector = 6.0 * 256.0 / 9.0;
// Measured blend of scalar and multivector pairs in the equivariant
// transformer's default configuration.
inline constexpr double kXiEquivariantMixed = 61.2;

inline double xi_preset(XiPreset p) {
  switch (p) {
    case XiPreset::baseline: return kXiBaseline;
    case XiPreset::equivariant_mixed: return kXiEquivariantMixed;
    case XiPreset::pure_multivector: return kXiPureMultivector;
  }
  fail("bad_argument", "unknown xi preset");
}

inline XiPreset xi_preset_from_name(std::string_view name) {
  if (name == "baseline") return XiPreset::baseline;
  if (name == "equivariant_mixed") return XiPreset::equivariant_mixed;
  if (name == "pure_multivector") return XiPreset::pure_multivector;
  fail("bad_argument", "unknown xi preset '" + std::string(name) +
                           "' (expected baseline, equivariant_mixed, or "
                           "pure_multivector)");
}

// Inversions of C = xi * N * D.
inline double tokens_for_budget(double budget, double params, double xi) {
  require(budget > 0 && params > 0 && xi > 0, "bad_argument",
          "budget, params, and xi must be positive");
  return budget / (xi * params);
}

inline double params_for_budget(double budget, double tokens, double xi) {
  require(budget > 0 && tokens > 0 && xi > 0, "bad_argument",
          "budget, tokens, and xi must be positive");
  return budget / (xi * tokens);
}

enum class ArchFamily { baseline, equivariant };

inline ArchFamily arch_family_from_name(std::string_view name) {
  if (name == "baseline") return ArchFamily::baseline;
  if (name == "equivariant") return ArchFamily::equivariant;
  fail("bad_argument", "unknown architecture family '" + std::string(name) +
                           "' (expected baseline or equivariant)");
}

// Width/depth schedule at integer size index n >= 1. Zero fields mean the
// family has no such component.
struct ArchDescriptor {
  std::int64_t size_index = 0;
  std::int64_t attention_blocks = 0;
  std::int64_t scalar_channels = 0;
  std::int64_t mv_channels = 0;
  std::int64_t attention_heads = 0;
  std::int64_t scalars_per_kqv = 0;
  std::int64_t mv_per_kqv = 0;
  std::int64_t mlp_hidden_scalars = 0;
  std::int64_t mlp_hidden_mv = 0;

  friend bool operator==(const ArchDescriptor&, const ArchDescriptor&) = default;
};

inline ArchDescriptor describe_arch(ArchFamily family, std::int64_t n) {
  require(n >= 1, "bad_argument", "size index must be >= 1");
  ArchDescriptor d;
  d.size_index = n;
  d.attention_blocks = 2 * n;
  d.attention_heads = 2 * n;
  if (family == ArchFamily::baseline) {
    d.scalar_channels = 64 * n;
    d.scalars_per_kqv = 64;
    d.mlp_hidden_scalars = 128 * n;
  } else {
    d.scalar_channels = 4 * n;
    d.mv_channels = n;
    d.scalars_per_kqv = 8;
    d.mv_per_kqv = 2;
    d.mlp_hidden_scalars = 8 * n;
    d.mlp_hidden_mv = 2 * n;
  }
  return d;
}

}  // namespace scalelaw
