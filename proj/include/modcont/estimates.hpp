#pragma once

#include <utility>

#include "modcont/coefficient.hpp"
#include "modcont/modulus.hpp"

namespace modcont {

struct CriterionReport {
  Outcome satisfied = Outcome::Inconclusive;
  double value = kInf;        // infimum of the probed ratio
  double minimizing_z = kNaN;
};

// inf_z b(z) / sqrt(int_z^inf (s-z) alpha) == 0, by analytic family rules
// plus a logarithmic probe grid.
CriterionReport criterion_upper(const Coefficient& coeff, const ModulusFunction& psi);
// mirrored criterion with b~ and the left tail.
CriterionReport criterion_lower(const Coefficient& coeff, const ModulusFunction& psi);

struct SideBound {
  double value = kInf;        // +-inf when no bound
  double minimizing_z = kNaN;
  CriterionReport criterion;
};

// Z+ = inf over probed z of min{ Z : moment(z, Z) >= b(z)^2 / t }; +inf when
// the criterion excludes a bound or no probe admits a finite Z.
SideBound gradient_bound_upper(const Coefficient& coeff, const ModulusFunction& psi,
                               double t);
// mirror: sup over probed z of max{ Z : moment_lower(z, Z) >= b~(z)^2 / t }.
SideBound gradient_bound_lower(const Coefficient& coeff, const ModulusFunction& psi,
                               double t);

struct GradientBoundReport {
  double t = 0.0;
  SideBound upper;
  SideBound lower;
};

GradientBoundReport gradient_bound_report(const Coefficient& coeff,
                                          const ModulusFunction& psi, double t);

// [xi_min, xi_max] with B(xi) <= M^2 / t; +-inf markers when B stays below
// the threshold on that side.
std::pair<double, double> oscillation_bound(const Coefficient& coeff, double M, double t);

struct LipschitzReport {
  Outcome bounded_above = Outcome::Inconclusive;
  Outcome bounded_below = Outcome::Inconclusive;
};

// Oscillation-to-Lipschitz smoothing holds iff B -> inf on that side.
LipschitzReport lipschitz_classifier(const Coefficient& coeff);

// Solves xi = t^{-1/2} (exp(-(psi-1)^2/(8t)) - exp(-(psi+1)^2/(8t))) for
// psi in [0, 1/2]; the right side is monotone there.
double csf_implicit_supersolution(double xi, double t);

// Reference slope curve 2 (t/M^2)^{3/2} exp(M^2/(8t)); meaningful for small
// t/M^2 only.
double csf_small_time_slope_bound(double t, double M);

}  // namespace modcont
