#include "modcont/translator.hpp"

#include <cmath>

#include "modcont/errors.hpp"
#include "modcont/roots.hpp"

namespace modcont {

double TranslatorProfile::x_of_p(double p) const {
  return x0 + integrate_A(coeff, p) / speed;
}

double TranslatorProfile::y_of_p(double p, double t) const {
  return y0 + integrate_B(coeff, p) / speed - speed * t;
}

double TranslatorProfile::slope_at(double x) const {
  if (p_min == p_max) {
    if (std::abs(x - x0) > 1e-12 * std::max(1.0, std::abs(x0)))
      throw OutOfRangeError("translator: degenerate profile only covers its anchor");
    return p_min;
  }
  const double xl = x_left(), xr = x_right();
  const double slack = 1e-12 * std::max({1.0, std::abs(xl), std::abs(xr)});
  if (x < xl - slack || x > xr + slack)
    throw OutOfRangeError("translator: x outside the profile's horizontal extent");
  auto f = [&](double p) { return x_of_p(p) - x; };
  RootOptions opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-12 * std::max(1.0, std::max(std::abs(p_min), std::abs(p_max)));
  return bisect_increasing(f, p_min, p_max, opts);
}

TranslatorProfile build_translator(const Coefficient& coeff, double V,
                                   std::pair<double, double> anchor,
                                   std::pair<double, double> p_range) {
  if (V <= 0) throw DomainError("build_translator: speed must be positive");
  if (p_range.second < p_range.first)
    throw DomainError("build_translator: p_range must be ordered");
  TranslatorProfile profile;
  profile.coeff = coeff;
  profile.speed = V;
  profile.x0 = anchor.first;
  profile.y0 = anchor.second;
  profile.p_min = p_range.first;
  profile.p_max = p_range.second;
  // reject ranges that hit a singularity of alpha
  (void)integrate_A(coeff, p_range.first);
  (void)integrate_A(coeff, p_range.second);
  return profile;
}

double eval_translator(const TranslatorProfile& profile, double x, double t) {
  if (profile.p_min == profile.p_max) {
    profile.slope_at(x);  // throws unless x is the anchor
    return profile.y0 - profile.speed * t;
  }
  const double p = profile.slope_at(x);
  return profile.y_of_p(p, t);
}

double closed_form_translator(Coefficient::Family family, double gamma, double V,
                              double s, ExpBranch branch) {
  if (V <= 0) throw DomainError("closed_form_translator: speed must be positive");
  using F = Coefficient::Family;
  switch (family) {
    case F::Heat:
      gamma = 0.0;
      break;
    case F::CurveShortening: {
      if (std::abs(V * s) >= M_PI / 2.0)
        throw DomainError("csf translator: |V s| must be < pi/2");
      return -std::log(std::cos(V * s)) / V;
    }
    case F::NonparametricCS: {
      if (std::abs(V * s) > 1.0)
        throw DomainError("semicircle translator: |V s| must be <= 1");
      return -std::sqrt(1.0 - V * s * (V * s)) / V;
    }
    case F::Homogeneous:
      break;
    default:
      throw DomainError("closed_form_translator: no closed form for this family");
  }
  if (gamma == 1.0) {
    const double sign = branch == ExpBranch::Plus ? 1.0 : -1.0;
    return -std::exp(sign * V * s) / V;
  }
  if (gamma == 2.0) {
    if (s == 0.0) throw DomainError("homogeneous gamma=2 translator undefined at s = 0");
    return -std::log(std::abs(s * V)) / V;
  }
  const double e = (2.0 - gamma) / (1.0 - gamma);
  const double base = std::abs(s * V * (1.0 - gamma));
  if (base == 0.0 && e < 0)
    throw DomainError("homogeneous translator undefined at s = 0 for gamma in (1,2)");
  return -std::pow(base, e) / ((2.0 - gamma) * V);
}

std::pair<ExtReal, ExtReal> asymptotic_endpoints(const Coefficient& coeff, double V) {
  if (V <= 0) throw DomainError("asymptotic_endpoints: speed must be positive");
  if (coeff.singular_at_zero()) {
    // int_0^inf |s|^-gamma diverges at one end for every gamma
    return {ExtReal::neg_inf(), ExtReal::pos_inf()};
  }
  IntegralPair pair = limits(coeff);
  ExtReal s_minus, s_plus;
  if (pair.a_plus.is_inconclusive()) {
    s_minus = ExtReal::unknown();
  } else if (pair.a_plus.is_infinite()) {
    s_minus = ExtReal::neg_inf();
  } else {
    s_minus = ExtReal::finite(-pair.a_plus.value / V);
  }
  if (pair.a_minus.is_inconclusive()) {
    s_plus = ExtReal::unknown();
  } else if (pair.a_minus.is_infinite()) {
    s_plus = ExtReal::pos_inf();
  } else {
    s_plus = ExtReal::finite(-pair.a_minus.value / V);
  }
  return {s_minus, s_plus};
}

}  // namespace modcont
