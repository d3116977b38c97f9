#include <cmath>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "scalelaw/serialize.hpp"

#include "helpers.hpp"

using namespace scalelaw;

TEST_CASE("law JSON round-trips at full precision") {
  ScalingLaw law = testutil::baseline_law();
  law.A = 1.2699999999999987;
  const ScalingLaw back = law_from_json(json::parse(law_to_json(law).dump()));
  CHECK(back == law);
}

TEST_CASE("law JSON validates fields") {
  CHECK_THROWS_AS(law_from_json(json::parse(R"({"A": 1.0})")), Error);
  CHECK_THROWS_AS(law_from_json(json::parse(R"({"A":"x","B":1,"alpha":1,"beta":1})")),
                  Error);
  // E is optional and defaults to zero.
  const ScalingLaw law =
      law_from_json(json::parse(R"({"A":1,"B":2,"alpha":0.5,"beta":0.25})"));
  CHECK(law.E == 0.0);
}

TEST_CASE("fit config round-trips including the grid") {
  FitConfig cfg;
  cfg.delta = 0.01;
  cfg.offset_mode = OffsetMode::free;
  cfg.max_iterations = 321;
  cfg.gradient_tolerance = 1e-8;
  cfg.history_size = 7;
  cfg.seed = -12;
  const std::vector<FitPoint> grid = {{-5, 0, 0.25, 1.25, -9.2},
                                      {5, 5, 1.25, 0.25, -9.2}};
  const FitConfig back =
      fit_config_from_json(json::parse(fit_config_to_json(cfg, grid).dump()));
  CHECK(back.delta == cfg.delta);
  CHECK(back.offset_mode == cfg.offset_mode);
  CHECK(back.max_iterations == cfg.max_iterations);
  CHECK(back.gradient_tolerance == cfg.gradient_tolerance);
  CHECK(back.history_size == cfg.history_size);
  CHECK(back.seed == cfg.seed);
  REQUIRE(back.init_grid.size() == 2);
  CHECK(back.init_grid[0] == grid[0]);
  CHECK(back.init_grid[1] == grid[1]);
}

TEST_CASE("fit result JSON carries failed starts as null") {
  FitResult r;
  r.law = testutil::baseline_law();
  r.objective = 1.5e-12;
  r.converged = true;
  r.chosen_init_index = 1;
  r.per_init_objectives = {2.0, 1.5e-12,
                           std::numeric_limits<double>::infinity()};
  const json j = fit_result_to_json(r);
  CHECK(j["per_init_objectives"][2].is_null());
  const FitResult back = fit_result_from_json(j);
  CHECK(back.law == r.law);
  CHECK(back.objective == r.objective);
  CHECK(std::isinf(back.per_init_objectives[2]));
  CHECK(back.per_init_objectives[1] == r.per_init_objectives[1]);
}

TEST_CASE("frontier JSON round-trips") {
  const ComputeFrontier f = derive_frontier(testutil::baseline_law(), 6.0);
  const ComputeFrontier back =
      frontier_from_json(json::parse(frontier_to_json(f).dump()));
  CHECK(back == f);
}

TEST_CASE("bootstrap summary JSON round-trips") {
  BootstrapSummary s;
  s.parameter_names = {"alpha", "beta"};
  s.central = {0.909, 0.379};
  s.lower = {0.832, 0.323};
  s.upper = {1.03, 0.424};
  s.level = 0.95;
  s.n_resamples = 1000;
  s.seed = 42;
  s.n_failed = 3;
  const BootstrapSummary back =
      bootstrap_summary_from_json(json::parse(bootstrap_summary_to_json(s).dump()));
  CHECK(back.parameter_names == s.parameter_names);
  CHECK(back.central == s.central);
  CHECK(back.lower == s.lower);
  CHECK(back.upper == s.upper);
  CHECK(back.level == s.level);
  CHECK(back.n_resamples == s.n_resamples);
  CHECK(back.seed == s.seed);
  CHECK(back.n_failed == s.n_failed);
}

TEST_CASE("dataset JSON round-trips optionals") {
  ExperimentDataset ds = testutil::make_dataset({{1e5, 1e9, 0.1}, {2e5, 1e9, 0.09}});
  ds.records[0].unique_tokens = 5e7;
  ds.records[0].augmented = false;
  ds.records[1].wall_time_s = 123.5;
  const ExperimentDataset back =
      dataset_from_json(json::parse(dataset_to_json(ds).dump()));
  CHECK(back.records == ds.records);
  CHECK(back.source_digest == ds.source_digest);
}

TEST_CASE("synthetic spec JSON round-trips") {
  SyntheticSpec spec;
  spec.law = testutil::equivariant_law();
  spec.n_points = 40;
  spec.n_min = 1e4;
  spec.n_max = 1e7;
  spec.d_min = 1e7;
  spec.d_max = 1e10;
  spec.noise_sigma = 0.05;
  spec.xi = 61.2;
  spec.seed = 7;
  spec.sampling = Sampling::isoflop_grid;
  spec.budgets = {1e16, 1e17};
  spec.arch_id = "eq";
  const SyntheticSpec back =
      synthetic_spec_from_json(json::parse(synthetic_spec_to_json(spec).dump()));
  CHECK(back.law == spec.law);
  CHECK(back.n_points == spec.n_points);
  CHECK(back.n_min == spec.n_min);
  CHECK(back.n_max == spec.n_max);
  CHECK(back.d_min == spec.d_min);
  CHECK(back.d_max == spec.d_max);
  CHECK(back.noise_sigma == spec.noise_sigma);
  CHECK(back.xi == spec.xi);
  CHECK(back.seed == spec.seed);
  CHECK(back.sampling == spec.sampling);
  CHECK(back.budgets == spec.budgets);
  CHECK(back.arch_id == spec.arch_id);
  // Generation from the rehydrated spec is identical.
  CHECK(generate_synthetic(back).records == generate_synthetic(spec).records);
}

TEST_CASE("spec JSON defaults are applied") {
  const SyntheticSpec spec = synthetic_spec_from_json(json::parse(R"({
    "law": {"A": 1.0, "B": 1.0, "alpha": 0.5, "beta": 0.5},
    "n_points": 5,
    "N_range": [10, 100],
    "D_range": [1000, 10000]
  })"));
  CHECK(spec.noise_sigma == 0.0);
  CHECK(spec.xi == 6.0);
  CHECK(spec.seed == 0);
  CHECK(spec.sampling == Sampling::log_uniform);
  CHECK(spec.arch_id == "synthetic");
}

TEST_CASE("hand-authored JSON rejects unknown fields") {
  // A misspelled optional field must fail, not silently use the default.
  CHECK_THROWS_AS(synthetic_spec_from_json(json::parse(R"({
    "law": {"A": 1.0, "B": 1.0, "alpha": 0.5, "beta": 0.5},
    "n_points": 5,
    "N_range": [10, 100],
    "D_range": [1000, 10000],
    "sigma": 0.05
  })")),
                  Error);
  CHECK_THROWS_AS(
      law_from_json(json::parse(R"({"A":1,"B":1,"alpha":0.5,"beta":0.5,"Beta":2})")),
      Error);
  CHECK_THROWS_AS(law_from_json(json::parse(R"([1, 2, 3])")), Error);
}

TEST_CASE("file helpers and dataset sniffing") {
  testutil::TempDir tmp("serialize");
  const ExperimentDataset ds = testutil::make_dataset({{1e5, 1e9, 0.1}});
  write_file(tmp.file("d.csv"), to_csv(ds));
  write_file(tmp.file("d.json"), dataset_to_json(ds).dump());
  CHECK(load_dataset(tmp.file("d.csv")).records == ds.records);
  CHECK(load_dataset(tmp.file("d.json")).records == ds.records);
  CHECK_THROWS_AS(read_file(tmp.file("missing.csv")), Error);
  CHECK_THROWS_AS(parse_json("{bad", "x"), Error);
}
