#pragma once

#include <functional>

namespace modcont {

struct RootOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  int max_iter = 200;
};

// Bisection on [lo, hi] for f nondecreasing with f(lo) <= 0 <= f(hi).
// Derivative-free on purpose: the coefficients are only continuous.
double bisect_increasing(const std::function<double(double)>& f, double lo,
                         double hi, const RootOptions& opts = {});

// Golden-section minimum of a unimodal f on [lo, hi].
double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, int iters = 120);

}  // namespace modcont
