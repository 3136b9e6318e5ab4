#include <doctest.h>

#include <cmath>

#include "modcont/errors.hpp"
#include "modcont/estimates.hpp"
#include "oracles.hpp"

using namespace modcont;

TEST_SUITE_BEGIN("estimates");

TEST_CASE("criterion classification for constant moduli") {
  auto constM = ModulusFunction::constant(1.0, 2.0);
  CHECK(criterion_upper(Coefficient::homogeneous(3.0), constM).satisfied == Outcome::No);
  CHECK(criterion_upper(Coefficient::heat(), constM).satisfied == Outcome::Yes);
  CHECK(criterion_upper(Coefficient::heat(), constM).value == 0.0);
  CHECK(criterion_upper(Coefficient::curve_shortening(), constM).satisfied == Outcome::Yes);
  CHECK(criterion_upper(Coefficient::nonparametric_cs(), constM).satisfied == Outcome::No);
  CHECK(criterion_lower(Coefficient::homogeneous(3.0), constM).satisfied == Outcome::No);
  CHECK(criterion_lower(Coefficient::heat(), constM).satisfied == Outcome::Yes);
}

TEST_CASE("criterion classification for Hoelder moduli") {
  auto hoelder = ModulusFunction::hoelder(1.0, 0.5, 2.0);
  // gamma < 2/(1-beta) = 4
  CHECK(criterion_upper(Coefficient::homogeneous(3.0), hoelder).satisfied == Outcome::Yes);
  CHECK(criterion_upper(Coefficient::asymptotically_homogeneous(3.0), hoelder).satisfied ==
        Outcome::Yes);
  CHECK(criterion_upper(Coefficient::homogeneous(4.5), hoelder).satisfied == Outcome::No);
  // Lipschitz modulus always passes (b reaches zero)
  auto lip = ModulusFunction::hoelder(1.0, 1.0, 2.0);
  CHECK(criterion_upper(Coefficient::homogeneous(5.0), lip).satisfied == Outcome::Yes);
}

TEST_CASE("heat gradient bound is sqrt(2) M / sqrt(t)") {
  for (double M : {0.5, 1.0, 2.0}) {
    auto psi = ModulusFunction::constant(M, 2.0);
    for (double t : {1e-3, 1e-1, 1.0}) {
      SideBound up = gradient_bound_upper(Coefficient::heat(), psi, t);
      CHECK(up.value ==
            doctest::Approx(std::sqrt(2.0) * M / std::sqrt(t)).epsilon(1e-6));
      SideBound lo = gradient_bound_lower(Coefficient::heat(), psi, t);
      CHECK(lo.value ==
            doctest::Approx(-std::sqrt(2.0) * M / std::sqrt(t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("csf gradient bound solves log sqrt(1 + Z^2) = M^2 / t") {
  auto psi = ModulusFunction::constant(1.0, 2.0);
  for (double t : {0.4, 1.0}) {
    const double expect = std::sqrt(std::exp(2.0 / t) - 1.0);
    SideBound up = gradient_bound_upper(Coefficient::curve_shortening(), psi, t);
    CHECK(up.value == doctest::Approx(expect).epsilon(1e-6));
    // alpha even and psi constant force the mirror bound
    SideBound lo = gradient_bound_lower(Coefficient::curve_shortening(), psi, t);
    CHECK(lo.value == doctest::Approx(-expect).epsilon(1e-6));
  }
}

TEST_CASE("failed criterion yields unbounded markers") {
  auto psi = ModulusFunction::constant(1.0, 2.0);
  SideBound up = gradient_bound_upper(Coefficient::homogeneous(3.0), psi, 0.5);
  CHECK(up.value == kInf);
  SideBound lo = gradient_bound_lower(Coefficient::homogeneous(3.0), psi, 0.5);
  CHECK(lo.value == -kInf);
}

TEST_CASE("bound report invariants for constant psi") {
  auto psi = ModulusFunction::constant(1.0, 2.0);
  double prev = kInf;
  for (double t : {0.01, 0.04, 0.16, 0.64}) {
    GradientBoundReport rep = gradient_bound_report(Coefficient::heat(), psi, t);
    CHECK(rep.lower.value <= 0.0);
    CHECK(rep.upper.value >= 0.0);
    CHECK(rep.upper.value < prev);
    CHECK(rep.upper.criterion.value == rep.lower.criterion.value);
    prev = rep.upper.value;
  }
  // the criterion ratio does not depend on t (here: a genuinely positive one)
  auto npcs_psi = ModulusFunction::constant(1.0, 2.0);
  const double v0 =
      gradient_bound_upper(Coefficient::nonparametric_cs(), npcs_psi, 0.01)
          .criterion.value;
  for (double t : {0.1, 1.0}) {
    const double vt =
        gradient_bound_upper(Coefficient::nonparametric_cs(), npcs_psi, t)
            .criterion.value;
    CHECK(vt == doctest::Approx(v0).epsilon(1e-12));
    CHECK(vt > 0.0);
  }

  // parabolic rescaling: Z+(M, t) = Z+(1, t / M^2) exactly
  for (double M : {0.5, 2.0}) {
    auto psiM = ModulusFunction::constant(M, 2.0);
    const double a = gradient_bound_upper(Coefficient::heat(), psiM, 0.09).value;
    const double b = gradient_bound_upper(Coefficient::heat(),
                                          ModulusFunction::constant(1.0, 2.0),
                                          0.09 / (M * M))
                         .value;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
  }
}

TEST_CASE("lower bound approaches zero from below as t grows") {
  auto psi = ModulusFunction::constant(1.0, 8.0);  // wide period keeps probes valid
  double prev = -kInf;
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    SideBound lo = gradient_bound_lower(Coefficient::curve_shortening(), psi, t);
    CHECK(lo.value < 0.0);
    CHECK(lo.value > prev);
    prev = lo.value;
  }
}

TEST_CASE("oscillation bound endpoints") {
  const double M = 1.0, t = 1.0;
  auto [lo, hi] = oscillation_bound(Coefficient::heat(), M, t);
  CHECK(hi == doctest::Approx(std::sqrt(2.0) * M / std::sqrt(t)).epsilon(1e-8));
  CHECK(lo == doctest::Approx(-hi).epsilon(1e-8));

  auto [clo, chi] = oscillation_bound(Coefficient::curve_shortening(), 1.0, 1.0);
  CHECK(chi == doctest::Approx(std::sqrt(std::exp(2.0) - 1.0)).epsilon(1e-8));
  CHECK(clo == doctest::Approx(-chi).epsilon(1e-8));

  // bounded B below the threshold: unbounded markers on both sides
  auto [nlo, nhi] = oscillation_bound(Coefficient::nonparametric_cs(), 2.0, 0.5);
  CHECK(nlo == -kInf);
  CHECK(nhi == kInf);
}

TEST_CASE("oscillation bound agrees with the z = 0 gradient bound") {
  for (auto c : {Coefficient::heat(), Coefficient::curve_shortening()}) {
    for (double t : {0.25, 1.0}) {
      auto [lo, hi] = oscillation_bound(c, 1.0, t);
      auto up = gradient_bound_upper(c, ModulusFunction::constant(1.0, 2.0), t);
      CHECK(hi == doctest::Approx(up.value).epsilon(1e-6));
    }
  }
}

TEST_CASE("lipschitz classifier") {
  auto csf = lipschitz_classifier(Coefficient::curve_shortening());
  CHECK(csf.bounded_above == Outcome::Yes);
  CHECK(csf.bounded_below == Outcome::Yes);
  auto hom = lipschitz_classifier(Coefficient::homogeneous(2.5));
  CHECK(hom.bounded_above == Outcome::No);
  CHECK(hom.bounded_below == Outcome::No);
  auto heat = lipschitz_classifier(Coefficient::heat());
  CHECK(heat.bounded_above == Outcome::Yes);
  CHECK(heat.bounded_below == Outcome::Yes);
}

TEST_CASE("implicit csf supersolution round-trips") {
  const double t = 0.05;
  auto forward = [&](double psi) {
    const double a = psi - 1.0, b = psi + 1.0;
    return (std::exp(-a * a / (8 * t)) - std::exp(-b * b / (8 * t))) / std::sqrt(t);
  };
  for (double psi : {0.05, 0.25, 0.49}) {
    CHECK(csf_implicit_supersolution(forward(psi), t) ==
          doctest::Approx(psi).epsilon(1e-8));
  }
  // xi -> 0 forces psi -> 0
  CHECK(csf_implicit_supersolution(1e-12, t) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK_THROWS_AS(csf_implicit_supersolution(1e9, t), NoRootError);

  // the slope of the implicit barrier at xi = 0 is the reference curve;
  // the step is kept well above the 1e-10 bisection tolerance
  for (double tt : {0.02, 0.05}) {
    const double dxi = 1e-5;
    const double slope = csf_implicit_supersolution(dxi, tt) / dxi;
    CHECK(slope == doctest::Approx(csf_small_time_slope_bound(tt, 1.0)).epsilon(1e-3));
  }
}

TEST_CASE("csf_small_time_slope_bound substitutions") {
  const double M = 1.0;
  CHECK(csf_small_time_slope_bound(M * M / 8, M) ==
        doctest::Approx(2.0 * std::pow(1.0 / 8, 1.5) * std::exp(1.0)).epsilon(1e-12));
  CHECK(csf_small_time_slope_bound(0.02, 1.0) ==
        doctest::Approx(2.0 * std::pow(0.02, 1.5) * std::exp(6.25)).epsilon(1e-12));
  // slopes are invariant under the parabolic rescaling u -> u(Mx, M^2 t)/M
  CHECK(csf_small_time_slope_bound(0.02 * 4, 2.0) == doctest::Approx(csf_small_time_slope_bound(0.02, 1.0)));
}

TEST_SUITE_END();
