#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "scalelaw/lbfgs.hpp"

using namespace scalelaw;

TEST_CASE("quadratic bowl converges to the center") {
  // f = sum c_i (x_i - t_i)^2 with wildly different curvatures.
  const std::vector<double> c = {1.0, 100.0, 0.01, 7.0};
  const std::vector<double> t = {1.0, -2.0, 30.0, 0.5};
  auto fg = [&](const std::vector<double>& x, std::vector<double>& g) {
    double f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += c[i] * (x[i] - t[i]) * (x[i] - t[i]);
      g[i] = 2.0 * c[i] * (x[i] - t[i]);
    }
    return f;
  };
  const LbfgsResult r = lbfgs_minimize(fg, {0.0, 0.0, 0.0, 0.0});
  REQUIRE(r.converged);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(r.x[i] == Catch::Approx(t[i]).margin(1e-7));
  CHECK(r.value < 1e-14);
}

TEST_CASE("rosenbrock reaches the global minimum") {
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    const double a = 1.0, b = 100.0;
    const double f = (a - x[0]) * (a - x[0]) +
                     b * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
    g[0] = -2.0 * (a - x[0]) - 4.0 * b * x[0] * (x[1] - x[0] * x[0]);
    g[1] = 2.0 * b * (x[1] - x[0] * x[0]);
    return f;
  };
  LbfgsOptions opts;
  opts.gradient_tolerance = 1e-9;
  const LbfgsResult r = lbfgs_minimize(fg, {-1.2, 1.0}, opts);
  REQUIRE(r.converged);
  CHECK(r.x[0] == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.x[1] == Catch::Approx(1.0).margin(1e-6));
  CHECK(r.iterations < 200);
}

TEST_CASE("non-smooth-ish objective still makes progress") {
  // Huber-style 1-d function: quadratic near 3, linear far away.
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    const double r = x[0] - 3.0;
    const double d = 0.5;
    if (std::abs(r) <= d) {
      g[0] = r;
      return 0.5 * r * r;
    }
    g[0] = r > 0 ? d : -d;
    return d * (std::abs(r) - 0.5 * d);
  };
  const LbfgsResult r = lbfgs_minimize(fg, {100.0});
  REQUIRE(r.converged);
  CHECK(r.x[0] == Catch::Approx(3.0).margin(1e-8));
}

TEST_CASE("already-optimal start returns immediately") {
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    g[0] = 2.0 * x[0];
    return x[0] * x[0];
  };
  const LbfgsResult r = lbfgs_minimize(fg, {0.0});
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.evaluations == 1);
}

TEST_CASE("iteration cap is honored") {
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    g[0] = 2.0 * (x[0] - 5.0);
    return (x[0] - 5.0) * (x[0] - 5.0);
  };
  LbfgsOptions opts;
  opts.max_iterations = 1;
  const LbfgsResult r = lbfgs_minimize(fg, {100.0}, opts);
  CHECK(r.iterations <= 1);
}

TEST_CASE("deterministic across calls") {
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    double f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = x[i] - std::cos(static_cast<double>(i));
      f += std::pow(v, 4) + 0.5 * v * v;
      g[i] = 4.0 * std::pow(v, 3) + v;
    }
    return f;
  };
  const LbfgsResult a = lbfgs_minimize(fg, {3.0, -4.0, 5.0});
  const LbfgsResult b = lbfgs_minimize(fg, {3.0, -4.0, 5.0});
  REQUIRE(a.x == b.x);
  REQUIRE(a.value == b.value);
  REQUIRE(a.evaluations == b.evaluations);
}

TEST_CASE("non-finite objective at the start fails cleanly") {
  auto fg = [](const std::vector<double>& x, std::vector<double>& g) {
    g[0] = 1.0;
    return std::log(x[0]);  // nan for negative start
  };
  const LbfgsResult r = lbfgs_minimize(fg, {-1.0});
  CHECK(r.line_search_failed);
  CHECK_FALSE(r.converged);
}
