#include <algorithm>
#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "scalelaw/bootstrap.hpp"
#include "scalelaw/synthetic.hpp"

#include "helpers.hpp"

using namespace scalelaw;

namespace {

// Shared noisy fixture: 24 points, mild log-normal noise, small init grid so
// resample fits stay fast.
ExperimentDataset noisy_fixture() {
  SyntheticSpec spec;
  spec.law = testutil::baseline_law();
  spec.n_points = 24;
  spec.n_min = 1e4;
  spec.n_max = 1e7;
  spec.d_min = 1e7;
  spec.d_max = 1e10;
  spec.noise_sigma = 0.02;
  spec.seed = 404;
  return generate_synthetic(spec);
}

FitConfig small_grid_config() {
  FitConfig cfg;
  cfg.init_grid = {{0.0, 0.0, 0.75, 0.25, 0.0},
                   {0.0, -2.0, 1.0, 0.5, 0.0},
                   {1.0, -1.0, 0.5, 0.75, 0.0}};
  cfg.gradient_tolerance = 1e-9;
  return cfg;
}

}  // namespace

TEST_CASE("quantile interpolation matches the hand-computed rule") {
  const std::vector<double> s = {1.0, 2.0, 3.0, 4.0};
  CHECK(quantile_sorted(s, 0.0) == 1.0);
  CHECK(quantile_sorted(s, 1.0) == 4.0);
  CHECK(quantile_sorted(s, 0.5) == Catch::Approx(2.5));
  // h = 3 * 0.25 = 0.75 -> 1 + 0.75 * (2 - 1).
  CHECK(quantile_sorted(s, 0.25) == Catch::Approx(1.75));
  CHECK(quantile_sorted({7.0}, 0.3) == 7.0);
  CHECK_THROWS_AS(quantile_sorted({}, 0.5), Error);
  CHECK_THROWS_AS(quantile_sorted(s, 1.5), Error);
}

TEST_CASE("basic interval reflects quantiles about the center") {
  std::vector<double> samples;
  for (int i = 1; i <= 101; ++i) samples.push_back(static_cast<double>(i));
  const auto [lo, hi] = ci_basic(samples, 51.0, 0.9);
  // q05 = 6, q95 = 96 on 1..101; reflected: (2*51-96, 2*51-6).
  CHECK(lo == Catch::Approx(6.0));
  CHECK(hi == Catch::Approx(96.0));
  // Skewed center shifts the reflected interval.
  const auto [lo2, hi2] = ci_basic(samples, 60.0, 0.9);
  CHECK(lo2 == Catch::Approx(24.0));
  CHECK(hi2 == Catch::Approx(114.0));
}

TEST_CASE("resample draws with replacement from the stream") {
  const ExperimentDataset ds = testutil::make_dataset(
      {{1, 1, 0.1}, {2, 2, 0.2}, {3, 3, 0.3}, {4, 4, 0.4}});
  SplitMix64 s1 = SplitMix64::stream(9, 0);
  SplitMix64 s2 = SplitMix64::stream(9, 0);
  const ExperimentDataset a = resample(ds, s1);
  const ExperimentDataset b = resample(ds, s2);
  REQUIRE(a.records.size() == ds.records.size());
  CHECK(a.records == b.records);
  for (const auto& r : a.records) {
    const bool known =
        std::any_of(ds.records.begin(), ds.records.end(),
                    [&](const ExperimentRecord& o) { return o == r; });
    CHECK(known);
  }
  // Across many resamples every index appears somewhere.
  std::vector<bool> seen(4, false);
  SplitMix64 s3 = SplitMix64::stream(9, 1);
  for (int k = 0; k < 16; ++k) {
    const ExperimentDataset d = resample(ds, s3);
    for (const auto& r : d.records)
      seen[static_cast<std::size_t>(r.model_params) - 1] = true;
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](bool v) { return v; }));
}

TEST_CASE("bootstrap summaries are identical at any parallelism") {
  const ExperimentDataset ds = noisy_fixture();
  const FitConfig cfg = small_grid_config();
  const BootstrapSummary s1 = bootstrap_laws(ds, cfg, 60, 2024, 6.0, 0.95, 1);
  const BootstrapSummary s3 = bootstrap_laws(ds, cfg, 60, 2024, 6.0, 0.95, 3);
  const BootstrapSummary s8 = bootstrap_laws(ds, cfg, 60, 2024, 6.0, 0.95, 8);
  CHECK(s1.central == s3.central);
  CHECK(s1.lower == s3.lower);
  CHECK(s1.upper == s3.upper);
  CHECK(s1.n_failed == s3.n_failed);
  CHECK(s1.central == s8.central);
  CHECK(s1.lower == s8.lower);
  CHECK(s1.upper == s8.upper);
}

TEST_CASE("different seeds give different intervals") {
  const ExperimentDataset ds = noisy_fixture();
  const FitConfig cfg = small_grid_config();
  const BootstrapSummary a = bootstrap_laws(ds, cfg, 40, 1, 6.0, 0.95, 2);
  const BootstrapSummary b = bootstrap_laws(ds, cfg, 40, 2, 6.0, 0.95, 2);
  CHECK(a.lower != b.lower);
  // Central fits are seed-independent.
  CHECK(a.central == b.central);
}

TEST_CASE("summary structure and ordering invariants") {
  const ExperimentDataset ds = noisy_fixture();
  const FitConfig cfg = small_grid_config();
  const BootstrapSummary s = bootstrap_laws(ds, cfg, 50, 7, 6.0, 0.95, 0);
  const std::vector<std::string> expect = {"A", "B", "alpha", "beta", "a",
                                           "b", "gamma", "F", "G"};
  REQUIRE(s.parameter_names == expect);
  REQUIRE(s.central.size() == expect.size());
  REQUIRE(s.lower.size() == expect.size());
  REQUIRE(s.upper.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    INFO(s.parameter_names[i]);
    CHECK(s.lower[i] <= s.upper[i]);
    CHECK(std::isfinite(s.lower[i]));
    CHECK(std::isfinite(s.upper[i]));
  }
  CHECK(s.level == 0.95);
  CHECK(s.n_resamples == 50);
  CHECK(s.seed == 7);
  // The generating exponents live inside their intervals for this fixture.
  const std::size_t alpha_idx = 2, beta_idx = 3;
  CHECK(s.lower[alpha_idx] < 0.909);
  CHECK(s.upper[alpha_idx] > 0.909);
  CHECK(s.lower[beta_idx] < 0.379);
  CHECK(s.upper[beta_idx] > 0.379);
}

TEST_CASE("free offset adds E to the reported parameters") {
  const ExperimentDataset ds = noisy_fixture();
  FitConfig cfg = small_grid_config();
  cfg.offset_mode = OffsetMode::free;
  for (auto& p : cfg.init_grid) p[4] = std::log(1e-5);
  const BootstrapSummary s = bootstrap_laws(ds, cfg, 30, 11, 6.0, 0.95, 2);
  const std::vector<std::string> expect = {"A", "B", "alpha", "beta", "E",
                                           "a", "b", "gamma", "F", "G"};
  CHECK(s.parameter_names == expect);
  // Multiplicative parameters keep positive bounds even when E collapses.
  CHECK(s.lower[4] >= 0.0);
}

TEST_CASE("log-scale intervals stay positive for prefactors") {
  const ExperimentDataset ds = noisy_fixture();
  const BootstrapSummary s =
      bootstrap_laws(ds, small_grid_config(), 50, 3, 6.0, 0.95, 2);
  for (const std::string name : {"A", "B", "F", "G"}) {
    const auto it = std::find(s.parameter_names.begin(),
                              s.parameter_names.end(), name);
    REQUIRE(it != s.parameter_names.end());
    const auto i = static_cast<std::size_t>(it - s.parameter_names.begin());
    INFO(name);
    CHECK(s.lower[i] > 0.0);
  }
}

TEST_CASE("bad arguments are rejected") {
  const ExperimentDataset ds = noisy_fixture();
  const FitConfig cfg = small_grid_config();
  CHECK_THROWS_AS(bootstrap_laws(ds, cfg, 0, 1, 6.0), Error);
  CHECK_THROWS_AS(bootstrap_laws(ds, cfg, 10, 1, 0.0), Error);
  CHECK_THROWS_AS(bootstrap_laws(ds, cfg, 10, 1, 6.0, 1.5), Error);
}
