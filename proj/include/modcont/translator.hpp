#pragma once

#include <utility>

#include "modcont/coefficient.hpp"

namespace modcont {

// Translating solution of u_t = alpha(u')u'' in graph form: the profile is
// parametrized by slope p via (x0, y0) + (A(p), B(p)) / V and the whole graph
// moves vertically at rate V: eval(x, t) = eval(x, 0) - V t.
struct TranslatorProfile {
  Coefficient coeff;
  double speed = 1.0;     // V > 0
  double x0 = 0.0, y0 = 0.0;
  double p_min = 0.0, p_max = 0.0;

  double x_of_p(double p) const;
  double y_of_p(double p, double t = 0.0) const;
  double x_left() const { return x_of_p(p_min); }
  double x_right() const { return x_of_p(p_max); }
  // inverts the strictly increasing p -> x(p) by bisection
  double slope_at(double x) const;
};

TranslatorProfile build_translator(const Coefficient& coeff, double V,
                                   std::pair<double, double> anchor,
                                   std::pair<double, double> p_range);

double eval_translator(const TranslatorProfile& profile, double x, double t);

enum class ExpBranch { Plus, Minus };

// Closed profile forms of the built-in families; the homogeneous gamma = 1
// case has an exponential branch choice.
double closed_form_translator(Coefficient::Family family, double gamma, double V,
                              double s, ExpBranch branch = ExpBranch::Plus);

// Horizontal extent (s-, s+) of translating solutions:
// s- = -V^-1 int_0^inf alpha, s+ = V^-1 int_{-inf}^0 alpha.
std::pair<ExtReal, ExtReal> asymptotic_endpoints(const Coefficient& coeff, double V);

}  // namespace modcont
