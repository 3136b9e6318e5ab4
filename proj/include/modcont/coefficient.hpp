#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcont/types.hpp"

namespace modcont {

// Diffusivity alpha(p) of u_t = alpha(u')u''.  Built-in families carry closed
// forms for their integrals; tabulated/custom evaluators fall back to
// adaptive quadrature.
struct Coefficient {
  enum class Family {
    Heat,                       // alpha = 1
    CurveShortening,            // alpha = 1/(1+p^2)
    NonparametricCS,            // alpha = (1+p^2)^(-3/2)
    Homogeneous,                // alpha = |p|^(-gamma), singular at p = 0
    AsymptoticallyHomogeneous,  // alpha ~ |p|^(-gamma) as |p| -> inf
    Tabulated,                  // piecewise linear in p, clamped outside
    Custom,                     // arbitrary positive evaluator
  };

  Family family = Family::Heat;
  double gamma = 0.0;
  std::function<double(double)> evaluator;          // AsymHom (optional) / Custom
  std::vector<std::pair<double, double>> samples;   // Tabulated, strictly increasing p
  std::optional<double> lower_bound;                // lambda
  std::optional<double> upper_bound;                // Lambda
  std::optional<std::pair<double, double>> clamp_range;  // Custom evaluable range

  static Coefficient heat();
  static Coefficient curve_shortening();
  static Coefficient nonparametric_cs();
  static Coefficient homogeneous(double gamma);
  static Coefficient asymptotically_homogeneous(double gamma);
  static Coefficient asymptotically_homogeneous(double gamma,
                                                std::function<double(double)> alpha);
  static Coefficient tabulated(std::vector<std::pair<double, double>> samples);
  static Coefficient custom(std::function<double(double)> alpha,
                            std::optional<std::pair<double, double>> clamp = {});

  // CLI/config spec strings: heat, csf, npcsf, hom:gamma=2.5, asymhom:gamma=3,
  // table:<path.csv>.
  static Coefficient parse(const std::string& spec);
  std::string describe() const;

  // Declared tail exponent when the family has one (Heat behaves as gamma=0,
  // csf as 2, npcsf as 3).
  std::optional<double> tail_exponent() const;
  bool singular_at_zero() const { return family == Family::Homogeneous; }
};

struct IntegralPair {
  std::function<double(double)> A;
  std::function<double(double)> B;
  ExtReal a_plus, a_minus, b_plus, b_minus;
};

// alpha(p); DomainError outside the family's validity domain (p = 0 for the
// homogeneous family), NonPositiveDiffusivity if an evaluator returns <= 0.
double eval_alpha(const Coefficient& c, double p);

// A(xi) = int_0^xi alpha, B(xi) = int_0^xi s alpha(s) ds.  Closed forms for
// the built-in families, quadrature otherwise.  DomainError when the
// homogeneous anchor at 0 is non-integrable (A: gamma >= 1, B: gamma >= 2).
double integrate_A(const Coefficient& c, double xi);
double integrate_B(const Coefficient& c, double xi);

IntegralPair limits(const Coefficient& c);

// int_z^Z (s - z) alpha(s) ds, Z may be +inf.  Nonnegative, nondecreasing in
// Z.  DomainError if the interval crosses a non-integrable singularity.
double moment(const Coefficient& c, double z, double Z);

// int_Z^z (z - s) alpha(s) ds for Z <= z, Z may be -inf.
double moment_lower(const Coefficient& c, double z, double Z);

// int_a^b alpha(s) ds on an interval that need not contain the anchor at 0;
// returns +inf across a non-integrable singularity (positive integrand).
double integrate_alpha_between(const Coefficient& c, double a, double b);

// alpha(-p); used to treat lower-side estimates as reflected upper-side ones.
Coefficient reflect_coefficient(const Coefficient& c);

}  // namespace modcont
