#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <vector>

#include "scalelaw/errors.hpp"

namespace scalelaw {

struct LbfgsOptions {
  int max_iterations = 1000;
  double gradient_tolerance = 1e-10;  // on the max-norm of the gradient
  // Also stop once the relative per-step decrease stays below this for
  // `stall_patience` consecutive accepted steps. Near-kink objectives can
  // have a gradient floor well above gradient_tolerance while the iterate
  // is already at the minimum to machine precision.
  double value_tolerance = 1e-15;
  int stall_patience = 2;
  int history_size = 10;
  double c1 = 1e-4;  // sufficient-decrease constant
  double c2 = 0.9;   // curvature constant
  int max_line_search = 30;
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0;
  std::vector<double> gradient;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;          // gradient tolerance reached or decrease stalled
  bool line_search_failed = false; // stopped because no acceptable step existed
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const std::vector<double>& a) {
  double m = 0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace detail

// Limited-memory BFGS with a strong Wolfe line search (bracket + bisection
// zoom). `fg(x, grad)` must return the objective and fill `grad`; it is the
// only way the optimizer touches the problem. Curvature pairs with
// s.y <= 1e-10 * |s| * |y| are discarded to keep the inverse Hessian model
// positive definite. Deterministic: no randomness, no time dependence.
template <class FG>
LbfgsResult lbfgs_minimize(FG&& fg, std::vector<double> x0,
                           const LbfgsOptions& opts = {}) {
  using detail::dot;
  using detail::norm2;
  using detail::norm_inf;

  const std::size_t dim = x0.size();
  require(dim > 0, "bad_argument", "empty start point");
  require(opts.history_size > 0 && opts.max_iterations > 0, "bad_argument",
          "history_size and max_iterations must be positive");

  LbfgsResult res;
  res.x = std::move(x0);
  res.gradient.assign(dim, 0.0);
  res.value = fg(res.x, res.gradient);
  ++res.evaluations;
  if (!std::isfinite(res.value)) {
    res.line_search_failed = true;
    return res;
  }

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;

  std::vector<double> direction(dim), x_new(dim), g_new(dim), q(dim);

  int stall_count = 0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (norm_inf(res.gradient) <= opts.gradient_tolerance) {
      res.converged = true;
      return res;
    }

    // Two-loop recursion for direction = -H * g.
    q = res.gradient;
    std::vector<double> alpha_coef(history.size());
    for (std::size_t i = history.size(); i-- > 0;) {
      const Pair& p = history[i];
      alpha_coef[i] = p.rho * dot(p.s, q);
      for (std::size_t k = 0; k < dim; ++k) q[k] -= alpha_coef[i] * p.y[k];
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t i = 0; i < history.size(); ++i) {
      const Pair& p = history[i];
      const double beta = p.rho * dot(p.y, q);
      for (std::size_t k = 0; k < dim; ++k)
        q[k] += (alpha_coef[i] - beta) * p.s[k];
    }
    for (std::size_t k = 0; k < dim; ++k) direction[k] = -q[k];

    double dg0 = dot(direction, res.gradient);
    if (!(dg0 < 0)) {
      // Curvature model went bad; restart from steepest descent.
      history.clear();
      for (std::size_t k = 0; k < dim; ++k) direction[k] = -res.gradient[k];
      dg0 = -dot(res.gradient, res.gradient);
      if (!(dg0 < 0)) {
        res.converged = true;  // gradient is exactly zero
        return res;
      }
    }

    // Strong Wolfe line search along `direction`.
    const double f0 = res.value;
    const double step_init =
        history.empty() ? std::min(1.0, 1.0 / std::max(1e-12, norm2(res.gradient)))
                        : 1.0;

    auto eval_at = [&](double t, double& f_out, double& dg_out) {
      for (std::size_t k = 0; k < dim; ++k)
        x_new[k] = res.x[k] + t * direction[k];
      f_out = fg(x_new, g_new);
      ++res.evaluations;
      dg_out = dot(g_new, direction);
    };

    double step = step_init;
    double t_prev = 0.0, f_prev = f0;
    double t_accept = -1.0, f_accept = 0.0;
    // Bracketing phase state for zoom: lo satisfies sufficient decrease.
    double lo = -1, hi = -1, f_lo = 0;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      double f_t, dg_t;
      eval_at(step, f_t, dg_t);
      const bool armijo_fail =
          !(f_t <= f0 + opts.c1 * step * dg0) || !std::isfinite(f_t);
      if (armijo_fail || (ls > 0 && f_t >= f_prev)) {
        lo = t_prev;
        f_lo = f_prev;
        hi = step;
        break;
      }
      if (std::abs(dg_t) <= -opts.c2 * dg0) {
        t_accept = step;
        f_accept = f_t;
        break;
      }
      if (dg_t >= 0) {
        lo = step;
        f_lo = f_t;
        hi = t_prev;
        break;
      }
      t_prev = step;
      f_prev = f_t;
      step = 2.0 * step;
    }

    if (t_accept < 0 && lo >= 0) {
      // Zoom by bisection; the invariant is that f(lo) satisfies the
      // sufficient-decrease condition (or lo == 0).
      for (int z = 0; z < 40 && std::abs(hi - lo) > 1e-16 * std::max(1.0, std::abs(lo)); ++z) {
        const double t = 0.5 * (lo + hi);
        double f_t, dg_t;
        eval_at(t, f_t, dg_t);
        if (!(f_t <= f0 + opts.c1 * t * dg0) || !std::isfinite(f_t) || f_t >= f_lo) {
          hi = t;
        } else {
          if (std::abs(dg_t) <= -opts.c2 * dg0) {
            t_accept = t;
            f_accept = f_t;
            break;
          }
          if (dg_t * (hi - lo) >= 0) hi = lo;
          lo = t;
          f_lo = f_t;
        }
      }
      if (t_accept < 0 && lo > 0 && f_lo < f0) {
        // Interval collapsed before the curvature condition was met; take the
        // best sufficient-decrease point. The s.y guard below rejects the
        // update if curvature information is unusable.
        double f_t, dg_t;
        eval_at(lo, f_t, dg_t);
        t_accept = lo;
        f_accept = f_t;
      }
    }

    if (t_accept < 0) {
      res.line_search_failed = true;
      return res;
    }

    // eval_at left x_new/g_new at the accepted point.
    for (std::size_t k = 0; k < dim; ++k) {
      x_new[k] = res.x[k] + t_accept * direction[k];
    }
    Pair p;
    p.s.resize(dim);
    p.y.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p.s[k] = x_new[k] - res.x[k];
      p.y[k] = g_new[k] - res.gradient[k];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-10 * norm2(p.s) * norm2(p.y)) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (static_cast<int>(history.size()) > opts.history_size)
        history.pop_front();
    }

    res.x = x_new;
    res.gradient = g_new;
    res.value = f_accept;
    res.iterations = iter + 1;

    const double scale = std::max({std::abs(f0), std::abs(f_accept), 1.0});
    if (f0 - f_accept <= opts.value_tolerance * scale) {
      if (++stall_count >= opts.stall_patience) {
        res.converged = true;
        return res;
      }
    } else {
      stall_count = 0;
    }
  }

  res.converged = norm_inf(res.gradient) <= opts.gradient_tolerance;
  return res;
}

}  // namespace scalelaw
