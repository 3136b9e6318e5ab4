#include <doctest.h>

#include <cmath>

#include "modcont/errors.hpp"
#include "modcont/estimates.hpp"
#include "modcont/supersolution.hpp"
#include "oracles.hpp"

using namespace modcont;

namespace {

Grid half_grid(double L, int n) {
  Grid g;
  g.periodic = false;
  g.x0 = 0.0;
  g.x1 = L / 2;
  g.n = n;
  return g;
}

SupersolutionBracket heat_bracket(int k, double T, int n = 256,
                                  std::vector<double> times = {}) {
  const double L = 2.0;
  auto psi = ModulusFunction::constant(1.0, L);
  SolverConfig config;
  config.horizon = T;
  config.output_times = std::move(times);
  return minimal_supersolution(Coefficient::heat(), psi, k, half_grid(L, n), config);
}

}  // namespace

TEST_SUITE_BEGIN("supersolution");

TEST_CASE("bracket is ordered and starts below psi") {
  auto bracket = heat_bracket(8, 0.05);
  const Grid& g = bracket.lower.grid;
  for (size_t j = 0; j < bracket.lower.times.size(); ++j) {
    for (int i = 0; i <= g.n; ++i) {
      CHECK(bracket.lower.fields[j][i] <=
            bracket.upper.fields[j][i] + 1e-6 * bracket.sup_psi);
    }
  }
  for (int i = 0; i <= g.n; ++i) CHECK(bracket.lower.fields[0][i] <= 1.0 + 1e-10);
}

TEST_CASE("heat bracket captures the square-wave Fourier solution") {
  auto bracket = heat_bracket(32, 0.1, 512);
  const Grid& g = bracket.lower.grid;
  for (double t : {0.01, 0.05, 0.1}) {
    for (int i = 0; i <= g.n; i += 5) {
      const double z = g.x(i);
      const double oracle = oracles::heat_square_wave(z, t, 1.0, 2.0);
      const double mid = bracket.estimate(t, z);
      const double gap = bracket.gap(t, z);
      CHECK(std::abs(mid - oracle) <= gap + 5e-3);
    }
  }
}

TEST_CASE("estimate is concave and decays in time") {
  auto bracket = heat_bracket(16, 0.05);
  const Grid& g = bracket.lower.grid;
  const double slack = 1e-7 * bracket.sup_psi;
  for (size_t j = 0; j < bracket.lower.times.size(); j += 8) {
    const double t = bracket.lower.times[j];
    for (int i = 1; i < g.n; ++i) {
      const double a = bracket.estimate(t, g.x(i - 1));
      const double b = bracket.estimate(t, g.x(i));
      const double c = bracket.estimate(t, g.x(i + 1));
      CHECK(a - 2 * b + c <= slack);
    }
    if (j > 0) {
      const double prev = bracket.lower.times[j - 8];
      for (int i = 0; i <= g.n; i += 7)
        CHECK(bracket.estimate(t, g.x(i)) <= bracket.estimate(prev, g.x(i)) + slack);
    }
  }
}

TEST_CASE("stationary concave majorants dominate the estimate") {
  auto bracket = heat_bracket(16, 0.05);
  const Grid& g = bracket.lower.grid;
  // psi itself is a stationary supersolution; so is anything larger
  for (double t : {0.01, 0.05}) {
    for (int i = 0; i <= g.n; i += 3) {
      const double est = bracket.estimate(t, g.x(i));
      const double gap = bracket.gap(t, g.x(i));
      CHECK(est <= 1.0 + gap + 1e-9);
      CHECK(est <= 1.7 + gap + 1e-9);
    }
  }
}

TEST_CASE("boundary gradient matches the Fourier slope for heat") {
  auto bracket = heat_bracket(64, 0.06, 512, {0.02, 0.04, 0.06});
  for (double t : {0.02, 0.04, 0.06}) {
    auto [left, right] = boundary_gradient(bracket, t);
    const double oracle = oracles::heat_square_wave_slope0(t, 1.0, 2.0);
    CHECK(left == doctest::Approx(oracle).epsilon(0.08));
    CHECK(right == doctest::Approx(-oracle).epsilon(0.08));
    // paper-style safe bound sqrt(2) M / sqrt(t)
    CHECK(left <= std::sqrt(2.0) / std::sqrt(t) + 0.05);
  }
  CHECK_THROWS_AS(boundary_gradient(bracket, 0.123456), TimeNotSampled);
}

TEST_CASE("boundary gradient approaches the Lipschitz constant as t -> 0") {
  const double L = 2.0;
  // tent modulus with slope 1 at the left end
  std::vector<std::pair<double, double>> tent = {{0.0, 0.0}, {0.5, 0.5}, {1.0, 0.4}};
  auto psi = ModulusFunction::piecewise(tent, L);
  SolverConfig config;
  config.horizon = 1e-4;
  auto bracket =
      minimal_supersolution(Coefficient::heat(), psi, 32, half_grid(L, 512), config);
  auto [left, right] = boundary_gradient(bracket, 1e-4);
  CHECK(left == doctest::Approx(1.0).epsilon(0.05));
  CHECK(right < 0.0);
}

TEST_CASE("csf boundary gradient respects the oscillation bound") {
  const double L = 2.0;
  SolverConfig config;
  config.horizon = 0.2;
  config.output_times = {0.05, 0.1, 0.2};
  auto bracket = minimal_supersolution(Coefficient::curve_shortening(),
                                       ModulusFunction::constant(1.0, L), 32,
                                       half_grid(L, 512), config);
  for (double t : config.output_times) {
    auto [left, right] = boundary_gradient(bracket, t);
    const double cap = oscillation_bound(Coefficient::curve_shortening(), 1.0, t).second;
    CHECK(left >= 0.0);
    CHECK(left <= cap + 0.05 * cap);
    CHECK(right >= -(cap + 0.05 * cap));
  }
}

TEST_CASE("time regularity bound from the comparison function") {
  auto bracket = heat_bracket(16, 0.05);
  auto rep = time_regularity_check(bracket, 0.1);
  CHECK(rep.pass);
  CHECK(rep.worst_ratio < 1.0);

  const double L = 2.0;
  SolverConfig config;
  config.horizon = 0.05;
  auto csf = minimal_supersolution(Coefficient::curve_shortening(),
                                   ModulusFunction::constant(1.0, L), 16,
                                   half_grid(L, 256), config);
  auto rep2 = time_regularity_check(csf, L / 16.0);
  CHECK(rep2.pass);
  CHECK_THROWS_AS(time_regularity_check(bracket, 0.9), DomainError);
}

TEST_CASE("gap shrinks with k at a fixed point") {
  const double z = 0.5, t = 0.05;
  double prev = kInf;
  for (int k : {4, 8, 16, 32}) {
    auto bracket = heat_bracket(k, 0.05);
    const double gap = bracket.gap(t, z);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_SUITE_END();
