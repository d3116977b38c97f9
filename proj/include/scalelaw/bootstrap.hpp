#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/fit.hpp"
#include "scalelaw/frontier.hpp"
#include "scalelaw/rng.hpp"

namespace scalelaw {

// Linear-interpolation quantile on a sorted sample (the h = (n-1)p rule).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  require(!sorted.empty(), "bad_argument", "quantile of empty sample");
  require(p >= 0 && p <= 1, "bad_argument", "quantile level outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

// Basic (empirical) bootstrap interval: reflect the sample quantiles about
// the central estimate. Returns (2c - q_hi, 2c - q_lo).
inline std::pair<double, double> ci_basic(std::vector<double> samples,
                                          double central, double level) {
  require(level > 0 && level < 1, "bad_argument", "level must be inside (0, 1)");
  require(!samples.empty(), "bad_argument", "no bootstrap samples");
  std::sort(samples.begin(), samples.end());
  const double q_lo = quantile_sorted(samples, 0.5 * (1.0 - level));
  const double q_hi = quantile_sorted(samples, 0.5 * (1.0 + level));
  return {2.0 * central - q_hi, 2.0 * central - q_lo};
}

// Draw n records with replacement. Consumes exactly n index draws from the
// stream.
inline ExperimentDataset resample(const ExperimentDataset& ds,
                                  SplitMix64& stream) {
  require(!ds.records.empty(), "empty_dataset", "cannot resample an empty dataset");
  ExperimentDataset out;
  out.source_digest = ds.source_digest;
  const std::uint64_t n = ds.records.size();
  out.records.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    out.records.push_back(ds.records[stream.index(n)]);
  return out;
}

struct BootstrapSummary {
  std::vector<std::string> parameter_names;
  std::vector<double> central;
  std::vector<double> lower;
  std::vector<double> upper;
  double level = 0.95;
  std::int64_t n_resamples = 0;
  std::int64_t seed = 0;
  std::int64_t n_failed = 0;
};

namespace detail {

// Scale-type of each summarized parameter. Multiplicative coefficients get
// their intervals built in log space; exponents and allocation shares stay
// linear.
inline bool log_scale_parameter(const std::string& name) {
  return name == "A" || name == "B" || name == "E" || name == "F" || name == "G";
}

inline std::vector<double> law_parameter_vector(const ScalingLaw& law,
                                                const ComputeFrontier& f,
                                                bool free_offset) {
  std::vector<double> v = {law.A, law.B, law.alpha, law.beta};
  if (free_offset) v.push_back(law.E);
  v.insert(v.end(), {f.a, f.b, f.gamma, f.F, f.G});
  return v;
}

inline std::vector<std::string> law_parameter_names(bool free_offset) {
  std::vector<std::string> n = {"A", "B", "alpha", "beta"};
  if (free_offset) n.push_back("E");
  n.insert(n.end(), {"a", "b", "gamma", "F", "G"});
  return n;
}

}  // namespace detail

// Nonparametric bootstrap of a scaling-law fit plus its derived frontier.
// Resample k draws from its own counter-derived stream (seed, k), so results
// are identical for any thread count and any completion order. More than 20%
// failed resample fits abort the summary.
inline BootstrapSummary bootstrap_laws(const ExperimentDataset& ds,
                                       const FitConfig& config,
                                       std::int64_t n_resamples,
                                       std::int64_t seed, double xi,
                                       double level = 0.95, int n_threads = 0) {
  require(n_resamples >= 1, "bad_argument", "n_resamples must be >= 1");
  require(xi > 0, "bad_argument", "xi must be positive");
  require(level > 0 && level < 1, "bad_argument", "level must be inside (0, 1)");

  const bool free_offset = config.offset_mode == OffsetMode::free;
  const FitResult central_fit = fit(ds, config);
  const ComputeFrontier central_frontier = derive_frontier(central_fit.law, xi);
  const std::vector<double> central =
      detail::law_parameter_vector(central_fit.law, central_frontier, free_offset);
  const std::vector<std::string> names = detail::law_parameter_names(free_offset);

  // One slot per resample index; slots written by whichever thread owns the
  // index, then reduced sequentially.
  const auto n = static_cast<std::size_t>(n_resamples);
  std::vector<std::vector<double>> slots(n);
  std::vector<unsigned char> failed(n, 0);

  auto worker_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      SplitMix64 stream = SplitMix64::stream(seed, k);
      ExperimentDataset draw = resample(ds, stream);
      try {
        const FitResult f = fit(draw, config);
        const ComputeFrontier fr = derive_frontier(f.law, xi);
        slots[k] = detail::law_parameter_vector(f.law, fr, free_offset);
      } catch (const Error&) {
        failed[k] = 1;
      }
    }
  };

  std::size_t workers =
      n_threads > 0 ? static_cast<std::size_t>(n_threads)
                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    worker_range(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  BootstrapSummary s;
  s.parameter_names = names;
  s.central = central;
  s.level = level;
  s.n_resamples = n_resamples;
  s.seed = seed;
  for (unsigned char f : failed) s.n_failed += f;
  if (static_cast<double>(s.n_failed) > 0.2 * static_cast<double>(n_resamples))
    fail("bootstrap_unreliable",
         std::to_string(s.n_failed) + " of " + std::to_string(n_resamples) +
             " resample fits failed (more than 20%)");

  s.lower.resize(names.size());
  s.upper.resize(names.size());
  for (std::size_t p = 0; p < names.size(); ++p) {
    const bool log_scale = detail::log_scale_parameter(names[p]);
    std::vector<double> sample;
    sample.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (failed[k]) continue;
      double v = slots[k][p];
      if (log_scale) v = std::log(std::max(v, 1e-300));
      sample.push_back(v);
    }
    double c = central[p];
    if (log_scale) c = std::log(std::max(c, 1e-300));
    auto [lo, hi] = ci_basic(std::move(sample), c, level);
    if (log_scale) {
      s.lower[p] = std::exp(lo);
      s.upper[p] = std::exp(hi);
    } else {
      s.lower[p] = lo;
      s.upper[p] = hi;
    }
  }
  return s;
}

}  // namespace scalelaw
