#pragma once

#include <cmath>

#include "scalelaw/errors.hpp"

namespace scalelaw {

// Two-term power law with constant offset:
//   L(N, D) = A / N^alpha + B / D^beta + E.
struct ScalingLaw {
  double A = 0;
  double B = 0;
  double E = 0;
  double alpha = 1;
  double beta = 1;

  friend bool operator==(const ScalingLaw&, const ScalingLaw&) = default;
};

// log L(N, D), evaluated as a log-sum-exp over the logs of the three terms so
// huge N^alpha or D^beta cannot overflow. Terms with zero coefficient drop
// out; all three zero is an error.
inline double log_eval_law(const ScalingLaw& law, double N, double D) {
  require(N > 0 && D > 0, "bad_argument", "N and D must be positive");
  require(law.A >= 0 && law.B >= 0 && law.E >= 0, "bad_argument",
          "law coefficients must be non-negative");
  require(!(law.A > 0) || law.alpha > 0, "bad_argument", "alpha must be positive");
  require(!(law.B > 0) || law.beta > 0, "bad_argument", "beta must be positive");

  double t[3];
  int n = 0;
  if (law.A > 0) t[n++] = std::log(law.A) - law.alpha * std::log(N);
  if (law.B > 0) t[n++] = std::log(law.B) - law.beta * std::log(D);
  if (law.E > 0) t[n++] = std::log(law.E);
  if (n == 0) fail("degenerate_law", "A, B, and E are all zero");

  double m = t[0];
  for (int i = 1; i < n; ++i) m = std::max(m, t[i]);
  double s = 0;
  for (int i = 0; i < n; ++i) s += std::exp(t[i] - m);
  return m + std::log(s);
}

inline double eval_law(const ScalingLaw& law, double N, double D) {
  return std::exp(log_eval_law(law, N, D));
}

// Huber penalty: quadratic within delta of zero, linear beyond, with matched
// value and slope at the joins.
inline double huber(double delta, double r) {
  require(delta > 0, "bad_argument", "delta must be positive");
  const double a = std::abs(r);
  if (a <= delta) return 0.5 * r * r;
  return delta * (a - 0.5 * delta);
}

}  // namespace scalelaw
