#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/law.hpp"
#include "scalelaw/lbfgs.hpp"

namespace scalelaw {

enum class OffsetMode { fixed_zero, free };

inline const char* offset_mode_name(OffsetMode m) {
  return m == OffsetMode::fixed_zero ? "fixed_zero" : "free";
}

inline OffsetMode offset_mode_from_name(std::string_view name) {
  if (name == "fixed_zero" || name == "zero") return OffsetMode::fixed_zero;
  if (name == "free") return OffsetMode::free;
  fail("bad_argument",
       "unknown offset mode '" + std::string(name) + "' (expected fixed_zero or free)");
}

// Internal fit coordinates, in fixed order. The offset component only
// participates when the mode is `free`.
using FitPoint = std::array<double, 5>;  // log A, log B, alpha, beta, log E

struct FitConfig {
  double delta = 1e-3;
  OffsetMode offset_mode = OffsetMode::fixed_zero;
  std::vector<FitPoint> init_grid;  // empty means the default multistart grid
  int max_iterations = 1000;
  double gradient_tolerance = 1e-10;
  int history_size = 10;
  std::int64_t seed = 0;  // recorded in outputs; the fit itself is deterministic
};

struct FitResult {
  ScalingLaw law;
  double objective = std::numeric_limits<double>::infinity();
  bool converged = false;
  int chosen_init_index = -1;
  // One entry per start, +inf for starts that diverged or left the valid
  // region. `objective` equals the minimum entry.
  std::vector<double> per_init_objectives;
  bool offset_clamped = false;  // free offset collapsed to zero and was reported as 0
};

namespace detail {

// Precomputed log-coordinates of a dataset, shared across objective calls.
struct FitData {
  std::vector<double> log_n, log_d, log_l;
  double min_loss = 0;

  explicit FitData(const ExperimentDataset& ds) {
    require(!ds.records.empty(), "empty_dataset", "cannot fit an empty dataset");
    log_n.reserve(ds.size());
    log_d.reserve(ds.size());
    log_l.reserve(ds.size());
    min_loss = std::numeric_limits<double>::infinity();
    for (const auto& r : ds.records) {
      require(r.model_params >= 1 && r.train_tokens >= 1 && r.test_loss > 0,
              "bad_argument", "records must have N >= 1, D >= 1, loss > 0");
      log_n.push_back(std::log(r.model_params));
      log_d.push_back(std::log(r.train_tokens));
      log_l.push_back(std::log(r.test_loss));
      min_loss = std::min(min_loss, r.test_loss);
    }
  }
};

// Objective and gradient in internal coordinates:
//   f(p) = sum_i huber_delta(lse_i - log L_i),
//   lse_i = log(exp(logA - alpha*logN_i) + exp(logB - beta*logD_i) + exp(logE)).
// The gradient uses the softmax weights of the three terms inside each lse.
inline double fit_objective(const FitData& d, const FitPoint& p, double delta,
                            bool free_e, double* grad5) {
  const double log_a = p[0], log_b = p[1], alpha = p[2], beta = p[3];
  const double log_e = free_e ? p[4] : -std::numeric_limits<double>::infinity();
  if (grad5) for (int k = 0; k < 5; ++k) grad5[k] = 0;

  double total = 0;
  for (std::size_t i = 0; i < d.log_n.size(); ++i) {
    const double t1 = log_a - alpha * d.log_n[i];
    const double t2 = log_b - beta * d.log_d[i];
    double m = std::max(t1, t2);
    if (free_e) m = std::max(m, log_e);
    const double e1 = std::exp(t1 - m);
    const double e2 = std::exp(t2 - m);
    const double e3 = free_e ? std::exp(log_e - m) : 0.0;
    const double s = e1 + e2 + e3;
    const double lse = m + std::log(s);
    const double r = lse - d.log_l[i];

    const double a_r = std::abs(r);
    total += a_r <= delta ? 0.5 * r * r : delta * (a_r - 0.5 * delta);
    if (grad5) {
      const double hp = a_r <= delta ? r : (r > 0 ? delta : -delta);
      const double w1 = e1 / s, w2 = e2 / s, w3 = e3 / s;
      grad5[0] += hp * w1;
      grad5[1] += hp * w2;
      grad5[2] -= hp * w1 * d.log_n[i];
      grad5[3] -= hp * w2 * d.log_d[i];
      if (free_e) grad5[4] += hp * w3;
    }
  }
  return total;
}

}  // namespace detail

// Robust fit objective for a candidate law on a dataset.
inline double objective(const ScalingLaw& law, const ExperimentDataset& ds,
                        double delta) {
  require(delta > 0, "bad_argument", "delta must be positive");
  detail::FitData d(ds);
  double total = 0;
  for (std::size_t i = 0; i < d.log_l.size(); ++i) {
    const double r = log_eval_law(law, ds.records[i].model_params,
                                  ds.records[i].train_tokens) -
                     d.log_l[i];
    total += huber(delta, r);
  }
  return total;
}

// Analytic gradient of the objective in internal coordinates. The offset
// component is zero when the mode pins E to zero.
inline FitPoint objective_gradient(const FitPoint& params,
                                   const ExperimentDataset& ds, double delta,
                                   OffsetMode mode) {
  require(delta > 0, "bad_argument", "delta must be positive");
  detail::FitData d(ds);
  FitPoint g{};
  detail::fit_objective(d, params, delta, mode == OffsetMode::free, g.data());
  return g;
}

inline double objective_at(const FitPoint& params, const ExperimentDataset& ds,
                           double delta, OffsetMode mode) {
  require(delta > 0, "bad_argument", "delta must be positive");
  detail::FitData d(ds);
  return detail::fit_objective(d, params, delta, mode == OffsetMode::free,
                               nullptr);
}

// Default multistart grid: the cross product of
//   log A, log B in {-5, 0, 5} and alpha, beta in {0.25, 0.75, 1.25},
// nested with log A outermost and beta innermost (81 starts). With a free
// offset every start uses log E = log(0.5 * min observed loss).
inline std::vector<FitPoint> default_init_grid(OffsetMode mode,
                                               const ExperimentDataset& ds) {
  double log_e_init = 0.0;
  if (mode == OffsetMode::free) {
    double min_loss = std::numeric_limits<double>::infinity();
    for (const auto& r : ds.records) min_loss = std::min(min_loss, r.test_loss);
    log_e_init = std::log(0.5 * min_loss);
  }
  static constexpr double kLogCoef[] = {-5.0, 0.0, 5.0};
  static constexpr double kExponent[] = {0.25, 0.75, 1.25};
  std::vector<FitPoint> grid;
  grid.reserve(81);
  for (double la : kLogCoef)
    for (double lb : kLogCoef)
      for (double a : kExponent)
        for (double b : kExponent)
          grid.push_back({la, lb, a, b, log_e_init});
  return grid;
}

// Multistart L-BFGS fit. Every start runs to completion; a start counts as
// valid only if it ends at a finite objective with positive exponents. The
// winner is the lowest valid objective (ties break toward the lower index).
inline FitResult fit(const ExperimentDataset& ds, const FitConfig& config) {
  require(config.delta > 0, "bad_argument", "delta must be positive");
  require(config.max_iterations > 0 && config.history_size > 0, "bad_argument",
          "max_iterations and history_size must be positive");
  detail::FitData data(ds);

  const bool free_e = config.offset_mode == OffsetMode::free;
  const std::size_t dim = free_e ? 5 : 4;
  const std::vector<FitPoint> grid =
      config.init_grid.empty() ? default_init_grid(config.offset_mode, ds)
                               : config.init_grid;
  require(!grid.empty(), "bad_argument", "init grid is empty");

  LbfgsOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.gradient_tolerance = config.gradient_tolerance;
  opts.history_size = config.history_size;

  auto fg = [&](const std::vector<double>& x, std::vector<double>& g) {
    FitPoint p{x[0], x[1], x[2], x[3], free_e ? x[4] : 0.0};
    double g5[5];
    const double f = detail::fit_objective(data, p, config.delta, free_e, g5);
    for (std::size_t k = 0; k < dim; ++k) g[k] = g5[k];
    return f;
  };

  FitResult result;
  result.per_init_objectives.assign(grid.size(),
                                    std::numeric_limits<double>::infinity());
  FitPoint best_point{};
  bool best_converged = false;
  int n_line_search = 0, n_invalid = 0, n_nonfinite = 0;

  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> x0(grid[k].begin(), grid[k].begin() + dim);
    LbfgsResult run = lbfgs_minimize(fg, std::move(x0), opts);
    const double alpha = run.x[2], beta = run.x[3];
    if (run.line_search_failed) ++n_line_search;
    if (!std::isfinite(run.value)) {
      ++n_nonfinite;
      continue;
    }
    if (!(alpha > 0) || !(beta > 0)) {
      ++n_invalid;
      continue;
    }
    result.per_init_objectives[k] = run.value;
    if (run.value < result.objective) {
      result.objective = run.value;
      result.chosen_init_index = static_cast<int>(k);
      for (std::size_t j = 0; j < dim; ++j) best_point[j] = run.x[j];
      best_converged = run.converged;
    }
  }

  if (result.chosen_init_index < 0)
    fail("no_convergence",
         "all " + std::to_string(grid.size()) + " starts failed (" +
             std::to_string(n_nonfinite) + " non-finite, " +
             std::to_string(n_invalid) + " non-positive exponents, " +
             std::to_string(n_line_search) + " line-search failures)");

  result.converged = best_converged;
  result.law.A = std::exp(best_point[0]);
  result.law.B = std::exp(best_point[1]);
  result.law.alpha = best_point[2];
  result.law.beta = best_point[3];
  if (free_e) {
    const double e = std::exp(best_point[4]);
    if (e < 1e-12 * data.min_loss) {
      result.law.E = 0.0;
      result.offset_clamped = true;
    } else {
      result.law.E = e;
    }
  }
  return result;
}

struct CvCandidate {
  double delta = 1e-3;
  OffsetMode offset_mode = OffsetMode::fixed_zero;
};

struct CvResult {
  int chosen_index = -1;
  FitConfig chosen;
  // Mean held-out |log predicted - log observed| per candidate; +inf when any
  // fold fails to fit.
  std::vector<double> scores;
};

// Default hyperparameter slate: delta in {1e-4, 1e-3, 1e-2, 1e-1} crossed
// with both offset modes, delta outermost.
inline std::vector<CvCandidate> default_cv_candidates() {
  std::vector<CvCandidate> out;
  for (double delta : {1e-4, 1e-3, 1e-2, 1e-1})
    for (OffsetMode mode : {OffsetMode::fixed_zero, OffsetMode::free})
      out.push_back({delta, mode});
  return out;
}

// Leave-one-out cross-validation over fit hyperparameters. Each fold refits
// on n-1 records and scores absolute log-loss error on the held-out record;
// a candidate whose any fold fails scores +inf. Ties break toward the lower
// candidate index.
inline CvResult loo_cv(const ExperimentDataset& ds,
                       const std::vector<CvCandidate>& candidates,
                       const FitConfig& base = {}) {
  require(!candidates.empty(), "bad_argument", "no cv candidates");
  require(ds.size() >= 3, "bad_argument",
          "leave-one-out needs at least 3 records");

  CvResult result;
  result.scores.assign(candidates.size(),
                       std::numeric_limits<double>::infinity());

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    FitConfig cfg = base;
    cfg.delta = candidates[c].delta;
    cfg.offset_mode = candidates[c].offset_mode;

    double total = 0;
    bool ok = true;
    for (std::size_t hold = 0; hold < ds.size() && ok; ++hold) {
      ExperimentDataset train;
      train.records.reserve(ds.size() - 1);
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (i != hold) train.records.push_back(ds.records[i]);
      try {
        const FitResult f = fit(train, cfg);
        const auto& r = ds.records[hold];
        total += std::abs(log_eval_law(f.law, r.model_params, r.train_tokens) -
                          std::log(r.test_loss));
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) result.scores[c] = total / static_cast<double>(ds.size());
    if (result.scores[c] <
        (result.chosen_index < 0
             ? std::numeric_limits<double>::infinity()
             : result.scores[static_cast<std::size_t>(result.chosen_index)])) {
      result.chosen_index = static_cast<int>(c);
    }
  }

  if (result.chosen_index < 0)
    fail("no_convergence", "every cross-validation candidate failed");
  result.chosen = base;
  result.chosen.delta = candidates[static_cast<std::size_t>(result.chosen_index)].delta;
  result.chosen.offset_mode =
      candidates[static_cast<std::size_t>(result.chosen_index)].offset_mode;
  return result;
}

}  // namespace scalelaw
