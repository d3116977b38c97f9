#include <catch2/catch_amalgamated.hpp>

#include "scalelaw/flops.hpp"

using namespace scalelaw;

TEST_CASE("xi presets") {
  CHECK(xi_preset(XiPreset::baseline) == 6.0);
  CHECK(xi_preset(XiPreset::pure_multivector) ==
        Catch::Approx(170.667).epsilon(1e-3));
  CHECK(xi_preset(XiPreset::pure_multivector) == 6.0 * 256.0 / 9.0);
  CHECK(xi_preset(XiPreset::equivariant_mixed) == 61.2);

  CHECK(xi_preset_from_name("baseline") == XiPreset::baseline);
  CHECK(xi_preset_from_name("equivariant_mixed") == XiPreset::equivariant_mixed);
  CHECK(xi_preset_from_name("pure_multivector") == XiPreset::pure_multivector);
  try {
    xi_preset_from_name("dense");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == "bad_argument");
  }
}

TEST_CASE("xi_from_mix endpoints and blends") {
  // All-scalar networks land on 6 regardless of size.
  for (std::int64_t k : {1, 100, 1000000})
    CHECK(xi_from_mix({{1, 1, k}}) == 6.0);
  // All-multivector networks land on 6*256/9.
  CHECK(xi_from_mix({{256, 9, 7}}) == Catch::Approx(170.667).epsilon(1e-3));
  // Equal pair counts: 6*(100 + 25600)/(100 + 900) = 154.2.
  const LayerMix mix = {{1, 1, 100}, {256, 9, 100}};
  CHECK(xi_from_mix(mix) == Catch::Approx(154.2).epsilon(1e-12));

  CHECK_THROWS_AS(xi_from_mix({}), Error);
  CHECK_THROWS_AS(xi_from_mix({{1, 1, 0}}), Error);
  CHECK_THROWS_AS(xi_from_mix({{0, 1, 5}}), Error);
}

TEST_CASE("budget algebra inverts C = xi N D") {
  CHECK(tokens_for_budget(1e16, 1e5, 6) == Catch::Approx(1.6667e10).epsilon(1e-4));
  CHECK(tokens_for_budget(6, 1, 6) == 1.0);
  CHECK(tokens_for_budget(6.12e14, 1e5, 61.2) == Catch::Approx(1e8).epsilon(1e-12));
  CHECK(params_for_budget(6e15, 1e9, 6) == Catch::Approx(1e6).epsilon(1e-12));
  // Round trip through both inversions.
  const double c = 3.7e17, n = 2.5e6, xi = 61.2;
  const double d = tokens_for_budget(c, n, xi);
  CHECK(params_for_budget(c, d, xi) == Catch::Approx(n).epsilon(1e-12));

  CHECK_THROWS_AS(tokens_for_budget(0, 1, 6), Error);
  CHECK_THROWS_AS(params_for_budget(1, 0, 6), Error);
  CHECK_THROWS_AS(params_for_budget(1, 1, 0), Error);
}

TEST_CASE("baseline descriptors scale linearly in n") {
  for (std::int64_t n : {1, 2, 5, 16}) {
    const ArchDescriptor d = describe_arch(ArchFamily::baseline, n);
    CHECK(d.size_index == n);
    CHECK(d.attention_blocks == 2 * n);
    CHECK(d.scalar_channels == 64 * n);
    CHECK(d.attention_heads == 2 * n);
    CHECK(d.scalars_per_kqv == 64);
    CHECK(d.mlp_hidden_scalars == 128 * n);
    // No multivector components in the baseline family.
    CHECK(d.mv_channels == 0);
    CHECK(d.mv_per_kqv == 0);
    CHECK(d.mlp_hidden_mv == 0);
  }
}

TEST_CASE("equivariant descriptors carry the multivector widths") {
  for (std::int64_t n : {1, 3, 8}) {
    const ArchDescriptor d = describe_arch(ArchFamily::equivariant, n);
    CHECK(d.attention_blocks == 2 * n);
    CHECK(d.scalar_channels == 4 * n);
    CHECK(d.mv_channels == n);
    CHECK(d.attention_heads == 2 * n);
    CHECK(d.scalars_per_kqv == 8);
    CHECK(d.mv_per_kqv == 2);
    CHECK(d.mlp_hidden_scalars == 8 * n);
    CHECK(d.mlp_hidden_mv == 2 * n);
  }
  CHECK_THROWS_AS(describe_arch(ArchFamily::baseline, 0), Error);
}

TEST_CASE("arch family names") {
  CHECK(arch_family_from_name("baseline") == ArchFamily::baseline);
  CHECK(arch_family_from_name("equivariant") == ArchFamily::equivariant);
  CHECK_THROWS_AS(arch_family_from_name("mlp"), Error);
}
