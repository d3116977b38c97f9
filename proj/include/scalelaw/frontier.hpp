#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "scalelaw/errors.hpp"
#include "scalelaw/experiment.hpp"
#include "scalelaw/law.hpp"

namespace scalelaw {

// Closed-form compute-optimal allocation for L(N,D) = A/N^alpha + B/D^beta + E
// under the budget constraint C = xi * N * D:
//   N*(C) = (G / xi^a) * C^a,   D*(C) = C^b / (G * xi^b),
//   L*(C) = E + F * C^-gamma,
// with a = beta/(alpha+beta), b = alpha/(alpha+beta),
// gamma = alpha*beta/(alpha+beta), G = (alpha*A / (beta*B))^(1/(alpha+beta)),
// and F = (A*G^-alpha + B*G^beta) * xi^gamma.
struct ComputeFrontier {
  double xi = 0;
  double G = 0;
  double a = 0;
  double b = 0;
  double gamma = 0;
  double F = 0;
  double E = 0;
  ScalingLaw source_law;

  friend bool operator==(const ComputeFrontier&, const ComputeFrontier&) = default;
};

inline ComputeFrontier derive_frontier(const ScalingLaw& law, double xi) {
  require(xi > 0, "bad_argument", "xi must be positive");
  if (!(law.A > 0) || !(law.B > 0))
    fail("degenerate_law",
         "frontier requires A > 0 and B > 0 (the allocation ratio is undefined "
         "otherwise)");
  require(law.alpha > 0 && law.beta > 0, "bad_argument",
          "alpha and beta must be positive");
  require(law.E >= 0, "bad_argument", "E must be non-negative");

  ComputeFrontier f;
  f.xi = xi;
  f.source_law = law;
  const double sum = law.alpha + law.beta;
  f.a = law.beta / sum;
  f.b = law.alpha / sum;
  f.gamma = law.alpha * law.beta / sum;
  f.G = std::pow(law.alpha * law.A / (law.beta * law.B), 1.0 / sum);
  f.F = (law.A * std::pow(f.G, -law.alpha) + law.B * std::pow(f.G, law.beta)) *
        std::pow(xi, f.gamma);
  f.E = law.E;
  return f;
}

inline double optimal_params(const ComputeFrontier& f, double budget) {
  require(budget > 0, "bad_argument", "budget must be positive");
  return f.G * std::pow(f.xi, -f.a) * std::pow(budget, f.a);
}

inline double optimal_tokens(const ComputeFrontier& f, double budget) {
  require(budget > 0, "bad_argument", "budget must be positive");
  return std::pow(budget, f.b) / (f.G * std::pow(f.xi, f.b));
}

inline double optimal_loss(const ComputeFrontier& f, double budget) {
  require(budget > 0, "bad_argument", "budget must be positive");
  return f.E + f.F * std::pow(budget, -f.gamma);
}

// Training plan holding xi*N*D = budget exactly for each chosen model size.
struct IsoFlopPoint {
  double model_params = 0;  // integer-valued
  double train_tokens = 0;  // real; D = budget / (xi * N)
};

struct IsoFlopPlan {
  double budget = 0;
  double xi = 0;
  std::vector<IsoFlopPoint> points;
};

inline IsoFlopPlan isoflop_plan(double budget, double xi,
                                const std::vector<double>& model_sizes) {
  require(budget > 0 && xi > 0, "bad_argument", "budget and xi must be positive");
  require(!model_sizes.empty(), "bad_argument", "no model sizes given");
  IsoFlopPlan plan;
  plan.budget = budget;
  plan.xi = xi;
  plan.points.reserve(model_sizes.size());
  for (double n : model_sizes) {
    require(n >= 1 && n == std::floor(n), "bad_argument",
            "model sizes must be positive integers, got " + format_double(n));
    const double d = budget / (xi * n);
    if (d < 1.0)
      fail("bad_argument", "budget " + format_double(budget) +
                               " leaves fewer than one token for N = " +
                               format_double(n) + " (D = " + format_double(d) + ")");
    plan.points.push_back({n, d});
  }
  return plan;
}

// Budget list syntax: comma-separated items, each either a plain number
// ("3e17") or an inclusive log-spaced range "lo..hi:k" with k >= 2 points.
inline std::vector<double> parse_budgets(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(
        pos, (comma == std::string_view::npos ? text.size() : comma) - pos);
    pos = (comma == std::string_view::npos) ? text.size() + 1 : comma + 1;
    if (item.empty()) fail("bad_argument", "empty budget entry");

    auto parse_num = [&](std::string_view s) {
      try {
        std::size_t used = 0;
        const double v = std::stod(std::string(s), &used);
        if (used != s.size()) throw std::invalid_argument("trailing");
        require(v > 0 && std::isfinite(v), "bad_argument",
                "budgets must be positive, got '" + std::string(s) + "'");
        return v;
      } catch (const Error&) {
        throw;
      } catch (const std::exception&) {
        fail("bad_argument", "bad budget value '" + std::string(s) + "'");
      }
    };

    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_num(item));
      continue;
    }
    const std::size_t colon = item.rfind(':');
    if (colon == std::string_view::npos || colon < dots + 2)
      fail("bad_argument",
           "bad budget range '" + std::string(item) + "' (expected lo..hi:k)");
    const double lo = parse_num(item.substr(0, dots));
    const double hi = parse_num(item.substr(dots + 2, colon - dots - 2));
    int k = 0;
    try {
      k = std::stoi(std::string(item.substr(colon + 1)));
    } catch (const std::exception&) {
      fail("bad_argument", "bad point count in '" + std::string(item) + "'");
    }
    require(k >= 2, "bad_argument", "budget range needs at least 2 points");
    require(hi > lo, "bad_argument", "budget range needs hi > lo");
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < k; ++i)
      out.push_back(i == 0 ? lo
                   : i == k - 1
                       ? hi
                       : std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                            static_cast<double>(k - 1)));
  }
  require(!out.empty(), "bad_argument", "no budgets given");
  return out;
}

}  // namespace scalelaw
