#pragma once

#include <functional>

namespace modcont {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_intervals = 4000;
};

// Adaptive Gauss-Kronrod 7-15 on a finite interval.  Throws QuadratureFailure
// if the tolerance cannot be met within the interval budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// Integral over [a, +inf) of a nonnegative-tail integrand, by doubling panels
// [a, a+1], [a+1, a+3], ... up to 2^40.  Returns +inf if panels keep growing,
// the converged sum if the panel increments become Cauchy, and sets
// *inconclusive when neither verdict is reached at the cutoff.
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             bool* inconclusive,
                             const QuadratureOptions& opts = {});

}  // namespace modcont
