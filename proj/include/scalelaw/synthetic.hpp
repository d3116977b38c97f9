#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/law.hpp"
#include "scalelaw/rng.hpp"

namespace scalelaw {

enum class Sampling { log_uniform, isoflop_grid };

inline const char* sampling_name(Sampling s) {
  return s == Sampling::log_uniform ? "log_uniform" : "isoflop_grid";
}

inline Sampling sampling_from_name(std::string_view name) {
  if (name == "log_uniform") return Sampling::log_uniform;
  if (name == "isoflop_grid") return Sampling::isoflop_grid;
  fail("bad_argument", "unknown sampling mode '" + std::string(name) +
                           "' (expected log_uniform or isoflop_grid)");
}

struct SyntheticSpec {
  ScalingLaw law;
  std::int64_t n_points = 0;
  double n_min = 0, n_max = 0;  // model-size range, integers >= 1
  double d_min = 0, d_max = 0;  // token range
  double noise_sigma = 0;       // stddev of the log-normal loss factor
  double xi = 6.0;
  std::int64_t seed = 0;
  Sampling sampling = Sampling::log_uniform;
  // isoflop_grid only: explicit budgets; empty means roughly sqrt(n_points)
  // budgets log-spaced across the reachable range.
  std::vector<double> budgets;
  std::string arch_id = "synthetic";
};

// Draws a dataset whose losses follow `law` exactly (noise_sigma = 0) or with
// independent log-normal noise. Per point the stream is consumed in a fixed
// order (N draw, D draw, noise draw for log_uniform; noise draw only for
// isoflop_grid), so output depends only on the spec.
inline ExperimentDataset generate_synthetic(const SyntheticSpec& spec) {
  require(spec.n_points >= 1, "bad_argument", "n_points must be >= 1");
  require(spec.n_min >= 1 && spec.n_max >= spec.n_min, "bad_argument",
          "need 1 <= n_min <= n_max");
  require(spec.d_min >= 1 && spec.d_max >= spec.d_min, "bad_argument",
          "need 1 <= d_min <= d_max");
  require(spec.noise_sigma >= 0, "bad_argument", "noise_sigma must be >= 0");
  require(spec.xi > 0, "bad_argument", "xi must be positive");
  require(!spec.arch_id.empty(), "bad_argument", "arch_id must be non-empty");

  SplitMix64 stream = SplitMix64::stream(spec.seed, 0);
  ExperimentDataset out;
  out.records.reserve(static_cast<std::size_t>(spec.n_points));

  auto push_record = [&](double n, double d) {
    const double z = stream.gaussian();
    ExperimentRecord r;
    r.arch_id = spec.arch_id;
    r.model_params = n;
    r.train_tokens = d;
    r.xi = spec.xi;
    r.test_loss = eval_law(spec.law, n, d) * std::exp(spec.noise_sigma * z);
    out.records.push_back(std::move(r));
  };

  const double log_n_lo = std::log(spec.n_min), log_n_hi = std::log(spec.n_max);
  const double log_d_lo = std::log(spec.d_min), log_d_hi = std::log(spec.d_max);

  if (spec.sampling == Sampling::log_uniform) {
    for (std::int64_t i = 0; i < spec.n_points; ++i) {
      const double un = stream.uniform();
      const double ud = stream.uniform();
      const double n = std::max(
          1.0, std::round(std::exp(log_n_lo + un * (log_n_hi - log_n_lo))));
      const double d = std::max(
          1.0, std::round(std::exp(log_d_lo + ud * (log_d_hi - log_d_lo))));
      push_record(n, d);
    }
    out.source_digest = fnv1a_hex(to_csv(out));
    return out;
  }

  // isoflop_grid: spend the points across budgets; within one budget the
  // model sizes are log-spaced over the part of [n_min, n_max] that keeps
  // token counts inside [d_min, d_max]; D = C / (xi * N) exactly.
  std::vector<double> budgets = spec.budgets;
  if (budgets.empty()) {
    const auto n_b = static_cast<std::int64_t>(std::max(
        1.0, std::round(std::sqrt(static_cast<double>(spec.n_points)))));
    const double c_lo = spec.xi * spec.n_min * spec.d_min;
    const double c_hi = spec.xi * spec.n_max * spec.d_max;
    // Keep derived budgets strictly inside the reachable corner points so
    // every budget admits a non-degenerate model-size interval.
    const double pad = (std::log(c_hi) - std::log(c_lo)) / 6.0;
    const double llo = std::log(c_lo) + pad, lhi = std::log(c_hi) - pad;
    for (std::int64_t i = 0; i < n_b; ++i)
      budgets.push_back(std::exp(
          n_b == 1 ? 0.5 * (llo + lhi)
                   : llo + (lhi - llo) * static_cast<double>(i) /
                               static_cast<double>(n_b - 1)));
  }
  for (double c : budgets)
    require(c > 0, "bad_argument", "budgets must be positive");

  const auto n_budgets = static_cast<std::int64_t>(budgets.size());
  const std::int64_t base = spec.n_points / n_budgets;
  const std::int64_t extra = spec.n_points % n_budgets;

  for (std::int64_t bi = 0; bi < n_budgets; ++bi) {
    const double c = budgets[static_cast<std::size_t>(bi)];
    const std::int64_t count = base + (bi < extra ? 1 : 0);
    if (count == 0) continue;
    const double n_lo = std::max(spec.n_min, c / (spec.xi * spec.d_max));
    const double n_hi = std::min(spec.n_max, c / (spec.xi * spec.d_min));
    if (!(n_lo <= n_hi))
      fail("bad_argument",
           "budget " + format_double(c) + " is unreachable inside the N and D ranges");
    const double llo = std::log(n_lo), lhi = std::log(n_hi);
    for (std::int64_t j = 0; j < count; ++j) {
      const double t = count == 1 ? 0.5
                                  : static_cast<double>(j) /
                                        static_cast<double>(count - 1);
      double n = std::max(1.0, std::round(std::exp(llo + t * (lhi - llo))));
      // Rounding N up can push D below one token; back N off instead.
      if (c / (spec.xi * n) < 1.0) n = std::max(1.0, std::floor(c / spec.xi));
      if (c / (spec.xi * n) < 1.0)
        fail("bad_argument", "budget " + format_double(c) +
                                 " is below one token of training at N = 1");
      push_record(n, c / (spec.xi * n));
    }
  }
  out.source_digest = fnv1a_hex(to_csv(out));
  return out;
}

}  // namespace scalelaw
