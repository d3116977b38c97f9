#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalelaw/bootstrap.hpp"
#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/fit.hpp"
#include "scalelaw/flops.hpp"
#include "scalelaw/frontier.hpp"
#include "scalelaw/report.hpp"
#include "scalelaw/serialize.hpp"
#include "scalelaw/svg.hpp"
#include "scalelaw/synthetic.hpp"

namespace scalelaw {

// Default-seed environment variable. A --seed flag always wins; unset means
// seed 0.
inline constexpr const char* kSeedEnvVar = "SCALELAW_SEED";

namespace cli_detail {

inline std::int64_t default_seed() {
  const char* v = std::getenv(kSeedEnvVar);
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long long s = std::strtoll(v, &end, 10);
  if (!end || *end != '\0')
    fail("bad_argument", std::string(kSeedEnvVar) + " is not an integer: '" +
                             v + "'");
  return static_cast<std::int64_t>(s);
}

// Refuses to clobber existing files unless --force was given.
inline void write_artifact(const std::string& path, std::string_view content,
                           bool force) {
  if (!force && std::filesystem::exists(path))
    fail("overwrite",
         "refusing to overwrite existing '" + path + "' (pass --force)");
  write_file(path, content);
}

// xi flags accept a number or a preset name.
inline double parse_xi(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) {
      require(v > 0 && std::isfinite(v), "bad_argument",
              "xi must be positive, got '" + text + "'");
      return v;
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
  }
  return xi_preset(xi_preset_from_name(text));
}

inline std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(text.substr(
        pos, (comma == std::string::npos ? text.size() : comma) - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline json provenance(const std::vector<std::pair<std::string, std::string>>&
                           input_digests,
                       std::int64_t seed) {
  json inputs = json::object();
  for (const auto& [path, digest] : input_digests) inputs[path] = digest;
  return json{{"inputs", std::move(inputs)}, {"seed", seed}};
}

inline ExperimentDataset load_filtered(const std::string& path,
                                       const std::string& arch) {
  ExperimentDataset ds = load_dataset(path);
  if (!arch.empty()) ds = filter_by_arch(ds, arch);
  return ds;
}

// Law inputs may be a bare ScalingLaw JSON or a full fit-result JSON.
inline ScalingLaw load_law(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  if (j.contains("law")) return law_from_json(j["law"]);
  return law_from_json(j);
}

inline std::string series_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct CliState {
  int exit_code = 0;
};

inline int cmd_ingest(const std::string& data, const std::string& arch,
                      const std::string& out, const std::string& json_out,
                      bool force) {
  const std::string raw = read_file(data);
  ExperimentDataset ds = load_dataset(data);
  if (!arch.empty()) ds = filter_by_arch(ds, arch);
  if (!out.empty()) write_artifact(out, to_csv(ds), force);
  if (!json_out.empty()) write_artifact(json_out, dataset_to_json(ds).dump(2) + "\n", force);
  json summary{{"records", ds.size()},
               {"arch_ids", arch_ids(ds)},
               {"source_digest", ds.source_digest},
               {"input_digest", fnv1a_hex(raw)}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

inline int cmd_fit(const std::string& data, const std::string& arch,
                   double delta, const std::string& offset, std::int64_t seed,
                   int max_iterations, const std::string& out, bool force) {
  const std::string raw = read_file(data);
  const ExperimentDataset ds = load_filtered(data, arch);
  FitConfig cfg;
  cfg.delta = delta;
  cfg.offset_mode = offset_mode_from_name(offset);
  cfg.seed = seed;
  cfg.max_iterations = max_iterations;
  const FitResult result = fit(ds, cfg);
  const std::vector<FitPoint> grid = cfg.init_grid.empty()
                                         ? default_init_grid(cfg.offset_mode, ds)
                                         : cfg.init_grid;
  json j = fit_result_to_json(result);
  j["config"] = fit_config_to_json(cfg, grid);
  j["provenance"] = provenance({{data, fnv1a_hex(raw)}}, seed);
  write_artifact(out, j.dump(2) + "\n", force);
  json summary{{"objective", result.objective},
               {"converged", result.converged},
               {"law", law_to_json(result.law)}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

inline int cmd_cv(const std::string& data, const std::string& arch,
                  const std::string& deltas, const std::string& offsets,
                  std::int64_t seed, const std::string& out, bool force) {
  const std::string raw = read_file(data);
  const ExperimentDataset ds = load_filtered(data, arch);
  std::vector<CvCandidate> candidates;
  for (const std::string& d : split_csv_list(deltas)) {
    double delta = 0;
    try {
      delta = std::stod(d);
    } catch (const std::exception&) {
      fail("bad_argument", "bad delta '" + d + "'");
    }
    require(delta > 0, "bad_argument", "delta must be positive");
    for (const std::string& m : split_csv_list(offsets))
      candidates.push_back({delta, offset_mode_from_name(m)});
  }
  FitConfig base;
  base.seed = seed;
  const CvResult result = loo_cv(ds, candidates, base);

  json cand = json::array();
  for (const auto& c : candidates)
    cand.push_back(json{{"delta", c.delta},
                        {"offset_mode", offset_mode_name(c.offset_mode)}});
  json scores = json::array();
  for (double s : result.scores) {
    if (std::isfinite(s)) scores.push_back(s);
    else scores.push_back(nullptr);
  }
  const std::vector<FitPoint> grid =
      default_init_grid(result.chosen.offset_mode, ds);
  json j{{"chosen", fit_config_to_json(result.chosen, grid)},
         {"chosen_index", result.chosen_index},
         {"scores", std::move(scores)},
         {"candidates", std::move(cand)},
         {"provenance", provenance({{data, fnv1a_hex(raw)}}, seed)}};
  write_artifact(out, j.dump(2) + "\n", force);
  std::cout << json{{"chosen_index", result.chosen_index},
                    {"delta", result.chosen.delta},
                    {"offset_mode", offset_mode_name(result.chosen.offset_mode)}}
                   .dump(2)
            << "\n";
  return 0;
}

inline int cmd_bootstrap(const std::string& data, const std::string& arch,
                         std::int64_t n, std::int64_t seed,
                         const std::string& xi_text, double delta,
                         const std::string& offset, int max_iterations,
                         double level, int threads, const std::string& out,
                         const std::string& table_out, bool force) {
  const std::string raw = read_file(data);
  const ExperimentDataset ds = load_filtered(data, arch);
  const double xi = parse_xi(xi_text);
  FitConfig cfg;
  cfg.delta = delta;
  cfg.offset_mode = offset_mode_from_name(offset);
  cfg.seed = seed;
  cfg.max_iterations = max_iterations;
  const BootstrapSummary summary =
      bootstrap_laws(ds, cfg, n, seed, xi, level, threads);
  json j = bootstrap_summary_to_json(summary);
  j["xi"] = xi;
  const std::vector<FitPoint> grid = cfg.init_grid.empty()
                                         ? default_init_grid(cfg.offset_mode, ds)
                                         : cfg.init_grid;
  j["config"] = fit_config_to_json(cfg, grid);
  j["provenance"] = provenance({{data, fnv1a_hex(raw)}}, seed);
  write_artifact(out, j.dump(2) + "\n", force);
  if (!table_out.empty()) write_artifact(table_out, render_table_csv(summary), force);
  std::cout << render_table_text(summary);
  return 0;
}

inline int cmd_frontier(const std::string& law_path, const std::string& xi_text,
                        const std::string& budgets_text, const std::string& out,
                        bool force) {
  const std::string raw = read_file(law_path);
  const ScalingLaw law = load_law(law_path);
  const double xi = parse_xi(xi_text);
  const ComputeFrontier frontier = derive_frontier(law, xi);
  json j = frontier_to_json(frontier);
  if (!budgets_text.empty()) {
    json table = json::array();
    for (double c : parse_budgets(budgets_text))
      table.push_back(json{{"budget", c},
                           {"N_star", optimal_params(frontier, c)},
                           {"D_star", optimal_tokens(frontier, c)},
                           {"L_star", optimal_loss(frontier, c)}});
    j["budget_table"] = std::move(table);
  }
  j["provenance"] = provenance({{law_path, fnv1a_hex(raw)}}, 0);
  write_artifact(out, j.dump(2) + "\n", force);
  std::cout << json{{"a", frontier.a}, {"b", frontier.b},
                    {"gamma", frontier.gamma}, {"F", frontier.F}}
                   .dump(2)
            << "\n";
  return 0;
}

inline int cmd_plan(const std::string& budget_text, const std::string& xi_text,
                    const std::string& sizes_text, const std::string& arch,
                    const std::string& out, bool force) {
  double budget = 0;
  try {
    budget = std::stod(budget_text);
  } catch (const std::exception&) {
    fail("bad_argument", "bad budget '" + budget_text + "'");
  }
  const double xi = parse_xi(xi_text);
  std::vector<double> sizes;
  for (const std::string& s : split_csv_list(sizes_text)) {
    try {
      sizes.push_back(std::stod(s));
    } catch (const std::exception&) {
      fail("bad_argument", "bad model size '" + s + "'");
    }
  }
  const IsoFlopPlan plan = isoflop_plan(budget, xi, sizes);
  // Experiment-schema CSV with the loss column left empty; fill test_loss
  // with measurements and the file ingests cleanly.
  std::string csv;
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
    if (c) csv += ',';
    csv += kCsvColumns[c];
  }
  csv += '\n';
  for (const auto& p : plan.points) {
    csv += arch;
    csv += ',';
    csv += format_double(p.model_params);
    csv += ',';
    csv += format_double(p.train_tokens);
    csv += ',';
    csv += format_double(plan.xi);
    csv += ",,,,\n";
  }
  write_artifact(out, csv, force);
  std::cout << json{{"points", plan.points.size()},
                    {"budget", plan.budget},
                    {"xi", plan.xi}}
                   .dump(2)
            << "\n";
  return 0;
}

inline int cmd_synth(const std::string& spec_path, const std::string& out,
                     std::int64_t seed, bool seed_given, bool force) {
  const std::string raw = read_file(spec_path);
  SyntheticSpec spec = synthetic_spec_from_json(parse_json(raw, spec_path));
  if (seed_given) spec.seed = seed;
  const ExperimentDataset ds = generate_synthetic(spec);
  write_artifact(out, to_csv(ds), force);
  std::cout << json{{"records", ds.size()},
                    {"source_digest", ds.source_digest},
                    {"seed", spec.seed},
                    {"input_digest", fnv1a_hex(raw)}}
                   .dump(2)
            << "\n";
  return 0;
}

inline int cmd_plot(const std::string& kind_text, const std::string& inputs_text,
                    const std::string& budgets_text, const std::string& x_range,
                    const std::string& y_range, double xi_for_laws, int samples,
                    const std::string& out, bool force) {
  PlotSpec spec;
  spec.kind = plot_kind_from_name(kind_text);
  spec.curve_samples = samples;
  if (!budgets_text.empty()) spec.budgets = parse_budgets(budgets_text);

  auto parse_range = [](const std::string& text) -> std::optional<AxisRange> {
    if (text.empty()) return std::nullopt;
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
      fail("bad_argument", "axis range must be lo:hi, got '" + text + "'");
    try {
      return AxisRange{std::stod(text.substr(0, colon)),
                       std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
      fail("bad_argument", "bad axis range '" + text + "'");
    }
  };
  spec.x_range = parse_range(x_range);
  spec.y_range = parse_range(y_range);

  for (const std::string& path : split_csv_list(inputs_text)) {
    require(!path.empty(), "bad_argument", "empty input path");
    const std::string text = read_file(path);
    std::size_t i = 0;
    while (i < text.size() &&
           (text[i] == ' ' || text[i] == '\n' || text[i] == '\r' || text[i] == '\t'))
      ++i;
    if (i < text.size() && text[i] == '{') {
      const json j = parse_json(text, path);
      if (j.contains("records")) {
        spec.datasets.push_back({series_name(path), dataset_from_json(j)});
      } else if (j.contains("G") && j.contains("gamma")) {
        spec.frontiers.push_back({series_name(path), frontier_from_json(j)});
      } else if (j.contains("law")) {
        spec.laws.push_back(
            {series_name(path), law_from_json(j["law"]), xi_for_laws});
      } else if (j.contains("A") && j.contains("alpha")) {
        spec.laws.push_back({series_name(path), law_from_json(j), xi_for_laws});
      } else {
        fail("schema", "cannot classify plot input '" + path + "'");
      }
    } else {
      spec.datasets.push_back({series_name(path), parse_records(text)});
    }
  }

  write_artifact(out, render_plot(spec), force);
  std::cout << json{{"kind", kind_text}, {"out", out}}.dump(2) << "\n";
  return 0;
}

}  // namespace cli_detail

// Full command-line surface. `args` excludes the program name. Exit codes:
// 0 success, 1 domain error (JSON diagnostics on stderr), 2 usage error.
inline int run_cli(const std::vector<std::string>& args) {
  using namespace cli_detail;

  CLI::App app{"scaling-law analysis toolkit"};
  app.require_subcommand(1);

  std::int64_t seed = 0;
  bool seed_given = false;
  std::string data, arch, out, json_out, offset = "zero";
  std::string law_path, xi_text, budgets_text, sizes_text;
  std::string deltas = "1e-4,1e-3,1e-2,1e-1", offsets = "zero,free";
  std::string kind_text, inputs_text, x_range, y_range, table_out, spec_path;
  double delta = 1e-3, level = 0.95, xi_for_laws = 6.0;
  std::int64_t n_resamples = 1000;
  int threads = 0, samples = 256, max_iterations = 1000;
  bool force = false;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed,
                    "RNG seed (default: $" + std::string(kSeedEnvVar) + " or 0)")
        ->each([&](const std::string&) { seed_given = true; });
  };
  auto add_force = [&](CLI::App* cmd) {
    cmd->add_flag("--force", force, "overwrite existing outputs");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "validate and normalize a results file");
  ingest->add_option("--data", data, "CSV or dataset JSON")->required();
  ingest->add_option("--arch", arch, "keep only this arch_id");
  ingest->add_option("--out", out, "write normalized CSV here");
  ingest->add_option("--json", json_out, "write dataset JSON here");
  add_force(ingest);

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a scaling law");
  fit_cmd->add_option("--data", data)->required();
  fit_cmd->add_option("--arch", arch);
  fit_cmd->add_option("--delta", delta, "Huber delta");
  fit_cmd->add_option("--offset", offset, "zero or free");
  fit_cmd->add_option("--max-iterations", max_iterations);
  fit_cmd->add_option("--out", out)->required();
  add_seed(fit_cmd);
  add_force(fit_cmd);

  CLI::App* cv = app.add_subcommand("cv", "choose fit hyperparameters by leave-one-out");
  cv->add_option("--data", data)->required();
  cv->add_option("--arch", arch);
  cv->add_option("--deltas", deltas, "comma list of Huber deltas");
  cv->add_option("--offsets", offsets, "comma list of offset modes");
  cv->add_option("--out", out)->required();
  add_seed(cv);
  add_force(cv);

  CLI::App* boot = app.add_subcommand("bootstrap", "bootstrap parameter intervals");
  boot->add_option("--data", data)->required();
  boot->add_option("--arch", arch);
  boot->add_option("--n", n_resamples, "number of resamples");
  boot->add_option("--xi", xi_text, "number or preset name")->required();
  boot->add_option("--delta", delta);
  boot->add_option("--offset", offset);
  boot->add_option("--max-iterations", max_iterations);
  boot->add_option("--level", level, "confidence level");
  boot->add_option("--threads", threads, "0 = hardware default");
  boot->add_option("--out", out)->required();
  boot->add_option("--table", table_out, "also write the CSV table here");
  add_seed(boot);
  add_force(boot);

  CLI::App* frontier_cmd = app.add_subcommand("frontier", "derive the compute-optimal frontier");
  frontier_cmd->add_option("--law", law_path, "law or fit-result JSON")->required();
  frontier_cmd->add_option("--xi", xi_text)->required();
  frontier_cmd->add_option("--budgets", budgets_text,
                           "comma list and/or lo..hi:k ranges");
  frontier_cmd->add_option("--out", out)->required();
  add_force(frontier_cmd);

  CLI::App* plan = app.add_subcommand("plan", "lay out an iso-FLOP run plan");
  std::string budget_text;
  plan->add_option("--budget", budget_text)->required();
  plan->add_option("--xi", xi_text)->required();
  plan->add_option("--model-sizes", sizes_text, "comma list of integers")->required();
  plan->add_option("--arch", arch, "arch_id for the planned rows");
  plan->add_option("--out", out)->required();
  add_force(plan);

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--spec", spec_path, "SyntheticSpec JSON")->required();
  synth->add_option("--out", out)->required();
  add_seed(synth);
  add_force(synth);

  CLI::App* plot = app.add_subcommand("plot", "render an SVG figure");
  plot->add_option("--kind", kind_text,
                   "compute_frontier | isoflop_panels | allocation | "
                   "data_scaling | heatmap_2d")
      ->required();
  plot->add_option("--inputs", inputs_text, "comma list of files")->required();
  plot->add_option("--budgets", budgets_text);
  plot->add_option("--x-range", x_range, "lo:hi");
  plot->add_option("--y-range", y_range, "lo:hi");
  plot->add_option("--xi", xi_for_laws, "xi used when plotting bare laws");
  plot->add_option("--samples", samples, "curve sample count");
  plot->add_option("--out", out)->required();
  add_force(plot);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("scalelaw");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (ingest->parsed()) return cmd_ingest(data, arch, out, json_out, force);
    if (fit_cmd->parsed())
      return cmd_fit(data, arch, delta, offset, seed, max_iterations, out, force);
    if (cv->parsed()) return cmd_cv(data, arch, deltas, offsets, seed, out, force);
    if (boot->parsed())
      return cmd_bootstrap(data, arch, n_resamples, seed, xi_text, delta, offset,
                           max_iterations, level, threads, out, table_out, force);
    if (frontier_cmd->parsed())
      return cmd_frontier(law_path, xi_text, budgets_text, out, force);
    if (plan->parsed())
      return cmd_plan(budget_text, xi_text, sizes_text,
                      arch.empty() ? "planned" : arch, out, force);
    if (synth->parsed()) return cmd_synth(spec_path, out, seed, seed_given, force);
    if (plot->parsed())
      return cmd_plot(kind_text, inputs_text, budgets_text, x_range, y_range,
                      xi_for_laws, samples, out, force);
  } catch (const Error& e) {
    std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace scalelaw
