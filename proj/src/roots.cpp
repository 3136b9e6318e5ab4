#include "modcont/roots.hpp"

#include <cmath>

#include "modcont/errors.hpp"

namespace modcont {

double bisect_increasing(const std::function<double(double)>& f, double lo,
                         double hi, const RootOptions& opts) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0 || fhi < 0) {
    throw NoRootError("bisect_increasing: root not bracketed");
  }
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  for (int i = 0; i < opts.max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if (fm < 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= opts.abs_tol + opts.rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, int iters) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace modcont
