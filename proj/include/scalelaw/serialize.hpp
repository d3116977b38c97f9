#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "scalelaw/bootstrap.hpp"
#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/fit.hpp"
#include "scalelaw/frontier.hpp"
#include "scalelaw/law.hpp"
#include "scalelaw/synthetic.hpp"

namespace scalelaw {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io", "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) fail("io", "error reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail("io", "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out.good()) fail("io", "error writing '" + path + "'");
}

namespace detail {

inline double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail("schema", std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

inline std::int64_t get_int(const json& j, const char* key, std::int64_t fallback,
                            bool required = false) {
  if (!j.contains(key)) {
    if (required) fail("schema", std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!j[key].is_number_integer())
    fail("schema", std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

// Hand-authored inputs get strict key checking: a misspelled optional field
// must not silently fall back to its default.
inline void require_known_keys(const json& j, const char* label,
                               std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    fail("schema", std::string(label) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      fail("schema",
           std::string(label) + " has unknown field '" + item.key() + "'");
  }
}

}  // namespace detail

inline json law_to_json(const ScalingLaw& law) {
  return json{{"A", law.A},
              {"B", law.B},
              {"E", law.E},
              {"alpha", law.alpha},
              {"beta", law.beta}};
}

inline ScalingLaw law_from_json(const json& j) {
  detail::require_known_keys(j, "law", {"A", "B", "E", "alpha", "beta"});
  ScalingLaw law;
  law.A = detail::get_number(j, "A");
  law.B = detail::get_number(j, "B");
  law.E = j.contains("E") ? detail::get_number(j, "E") : 0.0;
  law.alpha = detail::get_number(j, "alpha");
  law.beta = detail::get_number(j, "beta");
  return law;
}

inline json fit_config_to_json(const FitConfig& c,
                               const std::vector<FitPoint>& materialized_grid) {
  json grid = json::array();
  for (const auto& p : materialized_grid)
    grid.push_back(json::array({p[0], p[1], p[2], p[3], p[4]}));
  return json{{"delta", c.delta},
              {"offset_mode", offset_mode_name(c.offset_mode)},
              {"init_grid", std::move(grid)},
              {"max_iterations", c.max_iterations},
              {"gradient_tolerance", c.gradient_tolerance},
              {"history_size", c.history_size},
              {"seed", c.seed}};
}

inline FitConfig fit_config_from_json(const json& j) {
  FitConfig c;
  c.delta = detail::get_number(j, "delta");
  if (j.contains("offset_mode"))
    c.offset_mode = offset_mode_from_name(j["offset_mode"].get<std::string>());
  if (j.contains("init_grid")) {
    for (const auto& p : j["init_grid"]) {
      if (!p.is_array() || p.size() != 5)
        fail("schema", "init_grid entries must be arrays of 5 numbers");
      c.init_grid.push_back(
          {p[0].get<double>(), p[1].get<double>(), p[2].get<double>(),
           p[3].get<double>(), p[4].get<double>()});
    }
  }
  c.max_iterations =
      static_cast<int>(detail::get_int(j, "max_iterations", c.max_iterations));
  if (j.contains("gradient_tolerance"))
    c.gradient_tolerance = detail::get_number(j, "gradient_tolerance");
  c.history_size =
      static_cast<int>(detail::get_int(j, "history_size", c.history_size));
  c.seed = detail::get_int(j, "seed", c.seed);
  return c;
}

// Objective entries may be +inf (failed starts); JSON carries those as null.
inline json fit_result_to_json(const FitResult& r) {
  json objs = json::array();
  for (double v : r.per_init_objectives) {
    if (std::isfinite(v)) objs.push_back(v);
    else objs.push_back(nullptr);
  }
  return json{{"law", law_to_json(r.law)},
              {"objective", r.objective},
              {"converged", r.converged},
              {"chosen_init_index", r.chosen_init_index},
              {"per_init_objectives", std::move(objs)},
              {"offset_clamped", r.offset_clamped}};
}

inline FitResult fit_result_from_json(const json& j) {
  FitResult r;
  r.law = law_from_json(j.at("law"));
  r.objective = detail::get_number(j, "objective");
  r.converged = j.at("converged").get<bool>();
  r.chosen_init_index = static_cast<int>(detail::get_int(j, "chosen_init_index", -1));
  if (j.contains("per_init_objectives"))
    for (const auto& v : j["per_init_objectives"])
      r.per_init_objectives.push_back(
          v.is_null() ? std::numeric_limits<double>::infinity()
                      : v.get<double>());
  if (j.contains("offset_clamped")) r.offset_clamped = j["offset_clamped"].get<bool>();
  return r;
}

inline json frontier_to_json(const ComputeFrontier& f) {
  return json{{"xi", f.xi},       {"G", f.G},
              {"a", f.a},         {"b", f.b},
              {"gamma", f.gamma}, {"F", f.F},
              {"E", f.E},         {"source_law", law_to_json(f.source_law)}};
}

inline ComputeFrontier frontier_from_json(const json& j) {
  ComputeFrontier f;
  f.xi = detail::get_number(j, "xi");
  f.G = detail::get_number(j, "G");
  f.a = detail::get_number(j, "a");
  f.b = detail::get_number(j, "b");
  f.gamma = detail::get_number(j, "gamma");
  f.F = detail::get_number(j, "F");
  f.E = j.contains("E") ? detail::get_number(j, "E") : 0.0;
  if (j.contains("source_law")) f.source_law = law_from_json(j["source_law"]);
  return f;
}

inline json bootstrap_summary_to_json(const BootstrapSummary& s) {
  json params = json::array();
  for (std::size_t i = 0; i < s.parameter_names.size(); ++i)
    params.push_back(json{{"name", s.parameter_names[i]},
                          {"central", s.central[i]},
                          {"lower", s.lower[i]},
                          {"upper", s.upper[i]}});
  return json{{"parameters", std::move(params)},
              {"level", s.level},
              {"n_resamples", s.n_resamples},
              {"seed", s.seed},
              {"n_failed", s.n_failed}};
}

inline BootstrapSummary bootstrap_summary_from_json(const json& j) {
  BootstrapSummary s;
  for (const auto& p : j.at("parameters")) {
    s.parameter_names.push_back(p.at("name").get<std::string>());
    s.central.push_back(detail::get_number(p, "central"));
    s.lower.push_back(detail::get_number(p, "lower"));
    s.upper.push_back(detail::get_number(p, "upper"));
  }
  s.level = detail::get_number(j, "level");
  s.n_resamples = detail::get_int(j, "n_resamples", 0, true);
  s.seed = detail::get_int(j, "seed", 0, true);
  s.n_failed = detail::get_int(j, "n_failed", 0);
  return s;
}

inline json dataset_to_json(const ExperimentDataset& ds) {
  json records = json::array();
  for (const auto& r : ds.records) {
    json rec{{"arch_id", r.arch_id},
             {"model_params", r.model_params},
             {"train_tokens", r.train_tokens},
             {"xi", r.xi},
             {"test_loss", r.test_loss}};
    if (r.unique_tokens) rec["unique_tokens"] = *r.unique_tokens;
    if (r.augmented) rec["augmented"] = *r.augmented;
    if (r.wall_time_s) rec["wall_time_s"] = *r.wall_time_s;
    records.push_back(std::move(rec));
  }
  return json{{"records", std::move(records)}, {"source_digest", ds.source_digest}};
}

inline ExperimentDataset dataset_from_json(const json& j) {
  ExperimentDataset ds;
  if (!j.contains("records") || !j["records"].is_array())
    fail("schema", "dataset JSON needs a 'records' array");
  for (const auto& rec : j["records"]) {
    ExperimentRecord r;
    r.arch_id = rec.at("arch_id").get<std::string>();
    r.model_params = detail::get_number(rec, "model_params");
    r.train_tokens = detail::get_number(rec, "train_tokens");
    r.xi = detail::get_number(rec, "xi");
    r.test_loss = detail::get_number(rec, "test_loss");
    if (rec.contains("unique_tokens"))
      r.unique_tokens = detail::get_number(rec, "unique_tokens");
    if (rec.contains("augmented")) r.augmented = rec["augmented"].get<bool>();
    if (rec.contains("wall_time_s"))
      r.wall_time_s = detail::get_number(rec, "wall_time_s");
    ds.records.push_back(std::move(r));
  }
  if (ds.records.empty()) fail("empty_dataset", "dataset JSON has no records");
  ds.source_digest = j.contains("source_digest")
                         ? j["source_digest"].get<std::string>()
                         : fnv1a_hex(to_csv(ds));
  return ds;
}

inline json synthetic_spec_to_json(const SyntheticSpec& s) {
  json j{{"law", law_to_json(s.law)},
         {"n_points", s.n_points},
         {"N_range", json::array({s.n_min, s.n_max})},
         {"D_range", json::array({s.d_min, s.d_max})},
         {"noise_sigma", s.noise_sigma},
         {"xi", s.xi},
         {"seed", s.seed},
         {"sampling", sampling_name(s.sampling)},
         {"arch_id", s.arch_id}};
  if (!s.budgets.empty()) j["budgets"] = s.budgets;
  return j;
}

inline SyntheticSpec synthetic_spec_from_json(const json& j) {
  detail::require_known_keys(j, "synthetic spec",
                             {"law", "n_points", "N_range", "D_range",
                              "noise_sigma", "xi", "seed", "sampling",
                              "budgets", "arch_id"});
  SyntheticSpec s;
  s.law = law_from_json(j.at("law"));
  s.n_points = detail::get_int(j, "n_points", 0, true);
  auto range = [&](const char* key, double& lo, double& hi) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
      fail("schema", std::string("field '") + key + "' must be [lo, hi]");
    lo = j[key][0].get<double>();
    hi = j[key][1].get<double>();
  };
  range("N_range", s.n_min, s.n_max);
  range("D_range", s.d_min, s.d_max);
  if (j.contains("noise_sigma")) s.noise_sigma = detail::get_number(j, "noise_sigma");
  if (j.contains("xi")) s.xi = detail::get_number(j, "xi");
  s.seed = detail::get_int(j, "seed", 0);
  if (j.contains("sampling"))
    s.sampling = sampling_from_name(j["sampling"].get<std::string>());
  if (j.contains("budgets"))
    for (const auto& b : j["budgets"]) s.budgets.push_back(b.get<double>());
  if (j.contains("arch_id")) s.arch_id = j["arch_id"].get<std::string>();
  return s;
}

inline json parse_json(std::string_view text, const std::string& label) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("schema", "invalid JSON in " + label);
  return j;
}

// Datasets travel as CSV or as dataset JSON; sniff by leading character.
inline ExperimentDataset load_dataset(const std::string& path) {
  const std::string text = read_file(path);
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\n' || text[i] == '\r' ||
                             text[i] == '\t'))
    ++i;
  if (i < text.size() && text[i] == '{')
    return dataset_from_json(parse_json(text, path));
  return parse_records(text);
}

}  // namespace scalelaw
