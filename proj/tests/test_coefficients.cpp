#include <doctest.h>

#include <cmath>
#include <random>

#include "modcont/coefficient.hpp"
#include "modcont/errors.hpp"
#include "oracles.hpp"

using namespace modcont;

TEST_SUITE_BEGIN("coefficients");

TEST_CASE("eval_alpha on the built-in families") {
  CHECK(eval_alpha(Coefficient::heat(), 3.7) == 1.0);
  CHECK(eval_alpha(Coefficient::curve_shortening(), 0.0) == 1.0);
  CHECK(eval_alpha(Coefficient::homogeneous(2.0), 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(eval_alpha(Coefficient::homogeneous(2.0), 0.0), DomainError);
}

TEST_CASE("tabulated evaluator interpolates and clamps") {
  auto c = Coefficient::tabulated({{-1.0, 2.0}, {0.0, 1.0}, {1.0, 3.0}});
  CHECK(eval_alpha(c, -0.5) == doctest::Approx(1.5));
  CHECK(eval_alpha(c, 0.5) == doctest::Approx(2.0));
  CHECK(eval_alpha(c, 10.0) == doctest::Approx(3.0));  // clamped
  CHECK(eval_alpha(c, -10.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Coefficient::tabulated({{0.0, 1.0}, {0.0, 2.0}}), DomainError);
  CHECK_THROWS_AS(Coefficient::tabulated({{0.0, 1.0}, {1.0, -2.0}}), NonPositiveDiffusivity);
}

TEST_CASE("integrate_A closed forms") {
  CHECK(integrate_A(Coefficient::curve_shortening(), 1.0) ==
        doctest::Approx(0.7853981634).epsilon(1e-10));
  CHECK(integrate_A(Coefficient::heat(), -2.0) == doctest::Approx(-2.0).epsilon(1e-14));
  auto asymhom3 = Coefficient::asymptotically_homogeneous(3.0);
  CHECK(integrate_A(asymhom3, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(integrate_A(Coefficient::homogeneous(1.5), 1.0), DomainError);
}

TEST_CASE("integrate_B closed forms") {
  CHECK(integrate_B(Coefficient::curve_shortening(), 1.0) ==
        doctest::Approx(0.3465735903).epsilon(1e-10));
  CHECK(integrate_B(Coefficient::heat(), 0.0) == 0.0);
  CHECK(integrate_B(Coefficient::curve_shortening(), 0.0) == 0.0);
  CHECK(integrate_B(Coefficient::heat(), 3.0) == doctest::Approx(4.5).epsilon(1e-14));
  CHECK(integrate_B(Coefficient::homogeneous(1.5), 2.0) ==
        doctest::Approx(std::pow(2.0, 0.5) / 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_B(Coefficient::homogeneous(2.5), 1.0), DomainError);
}

TEST_CASE("limits of the built-in families") {
  auto csf = limits(Coefficient::curve_shortening());
  CHECK(csf.a_plus.value == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(csf.b_plus.is_infinite());
  CHECK(csf.a_minus.value == doctest::Approx(-M_PI / 2).epsilon(1e-12));

  auto heat = limits(Coefficient::heat());
  CHECK(heat.a_plus.is_infinite());
  CHECK(heat.b_plus.is_infinite());

  auto npcs = limits(Coefficient::nonparametric_cs());
  CHECK(npcs.a_plus.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(npcs.b_plus.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(npcs.b_minus.value == doctest::Approx(1.0).epsilon(1e-9));

  auto hom = limits(Coefficient::homogeneous(2.5));
  CHECK(!hom.b_plus.is_infinite());
  CHECK(!hom.b_plus.is_inconclusive());
  auto hom1 = limits(Coefficient::homogeneous(1.0));
  CHECK(hom1.a_plus.is_infinite());
  CHECK(hom1.b_plus.is_infinite());
}

TEST_CASE("limits probe a genuinely custom coefficient") {
  // int_0^inf dp/(1+p^4) = pi/(2 sqrt(2)), int_0^inf p dp/(1+p^4) = pi/4
  auto c = Coefficient::custom([](double p) { return 1.0 / (1.0 + p * p * p * p); });
  auto lim = limits(c);
  CHECK(lim.a_plus.finite_extent());
  CHECK(lim.a_plus.value == doctest::Approx(M_PI / (2 * std::sqrt(2.0))).epsilon(1e-8));
  CHECK(lim.b_plus.value == doctest::Approx(M_PI / 4).epsilon(1e-8));
  CHECK(lim.a_minus.value == doctest::Approx(-M_PI / (2 * std::sqrt(2.0))).epsilon(1e-8));
}

TEST_CASE("moment integrals") {
  CHECK(moment(Coefficient::heat(), 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(moment(Coefficient::heat(), 1.0, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(moment(Coefficient::curve_shortening(), 0.0, kInf)));
  // analytic: int_z^inf (s-z) s^-3 ds = 1/(2z)
  CHECK(moment(Coefficient::homogeneous(3.0), 2.0, kInf) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK_THROWS_AS(moment(Coefficient::homogeneous(1.5), -1.0, 1.0), DomainError);
  // npcs has a finite moment everywhere; Simpson body plus the elementary tail
  const double m = moment(Coefficient::nonparametric_cs(), -2.0, kInf);
  const double X = 60.0;
  const double ref = oracles::simpson([](double s) { return (s + 2.0) * std::pow(1 + s * s, -1.5); },
                                      -2.0, X, 1 << 16) +
                     1.0 / std::sqrt(1 + X * X) + 2.0 * (1.0 - X / std::sqrt(1 + X * X));
  CHECK(m == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("moment_lower mirrors moment") {
  CHECK(moment_lower(Coefficient::heat(), 0.0, -2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(moment_lower(Coefficient::heat(), 3.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  // asymmetric tabulated coefficient: check against direct Simpson
  auto c = Coefficient::tabulated({{-2.0, 0.5}, {0.0, 1.0}, {2.0, 4.0}});
  const double got = moment_lower(c, 1.0, -1.5);
  const double ref = oracles::simpson(
      [&](double s) { return (1.0 - s) * eval_alpha(c, s); }, -1.5, 1.0, 1 << 14);
  CHECK(got == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("monotonicity of A and of the moment (random samples)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-8.0, 8.0);
  for (auto c : {Coefficient::heat(), Coefficient::curve_shortening(),
                 Coefficient::nonparametric_cs()}) {
    for (int it = 0; it < 50; ++it) {
      double x1 = unif(rng), x2 = unif(rng);
      if (x1 > x2) std::swap(x1, x2);
      if (x2 - x1 < 1e-6) continue;
      CHECK(integrate_A(c, x1) < integrate_A(c, x2));
      double z = unif(rng);
      double Z1 = z + std::abs(unif(rng));
      double Z2 = Z1 + std::abs(unif(rng));
      CHECK(moment(c, z, Z1) <= moment(c, z, Z2) + 1e-12);
      CHECK(moment(c, z - 0.5, Z1) + 1e-12 >= moment(c, z, Z1));
    }
  }
}

TEST_CASE("closed forms agree with quadrature on [-50, 50]") {
  auto quad_A = [](const Coefficient& c, double xi) {
    return oracles::simpson([&](double s) { return eval_alpha(c, s); }, 0.0, xi, 1 << 15);
  };
  auto quad_B = [](const Coefficient& c, double xi) {
    return oracles::simpson([&](double s) { return s * eval_alpha(c, s); }, 0.0, xi, 1 << 15);
  };
  for (auto c : {Coefficient::heat(), Coefficient::curve_shortening(),
                 Coefficient::nonparametric_cs(),
                 Coefficient::asymptotically_homogeneous(2.5)}) {
    for (double xi : {-50.0, -7.3, 1.0, 12.5, 50.0}) {
      CHECK(integrate_A(c, xi) == doctest::Approx(quad_A(c, xi)).epsilon(1e-8));
      CHECK(integrate_B(c, xi) == doctest::Approx(quad_B(c, xi)).epsilon(1e-8));
    }
  }
}

TEST_CASE("homogeneous scaling A(k xi) = k^(1-gamma) A(xi)") {
  for (double gamma : {0.3, 0.5, 0.9}) {
    auto c = Coefficient::homogeneous(gamma);
    for (double k : {0.5, 2.0, 7.0}) {
      for (double xi : {0.7, 3.0}) {
        CHECK(integrate_A(c, k * xi) ==
              doctest::Approx(std::pow(k, 1.0 - gamma) * integrate_A(c, xi)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("ellipticity bounds sandwich A when declared") {
  auto c = Coefficient::curve_shortening();
  c.lower_bound = 1.0 / (1 + 25.0);  // lambda on |p| <= 5
  c.upper_bound = 1.0;
  for (double xi : {-5.0, -1.0, 0.5, 5.0}) {
    const double A = integrate_A(c, xi);
    CHECK(std::abs(A) >= *c.lower_bound * std::abs(xi) - 1e-12);
    CHECK(std::abs(A) <= *c.upper_bound * std::abs(xi) + 1e-12);
  }
}

TEST_CASE("coefficient spec strings parse") {
  CHECK(Coefficient::parse("heat").family == Coefficient::Family::Heat);
  CHECK(Coefficient::parse("csf").family == Coefficient::Family::CurveShortening);
  CHECK(Coefficient::parse("npcsf").family == Coefficient::Family::NonparametricCS);
  CHECK(Coefficient::parse("hom:gamma=2.5").gamma == doctest::Approx(2.5));
  CHECK(Coefficient::parse("asymhom:gamma=3").gamma == doctest::Approx(3.0));
  CHECK_THROWS_AS(Coefficient::parse("nope"), DomainError);
}

TEST_SUITE_END();
