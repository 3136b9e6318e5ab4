#include "modcont/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "modcont/errors.hpp"
#include "modcont/roots.hpp"

namespace modcont {

namespace {

std::vector<double> probe_grid() {
  std::vector<double> zs;
  for (int j = 40; j >= -20; --j) zs.push_back(-std::ldexp(1.0, j));
  zs.push_back(0.0);
  for (int j = -20; j <= 40; ++j) zs.push_back(std::ldexp(1.0, j));
  return zs;
}

// The upper-side machinery; the lower side reuses it on the reflected
// coefficient with the dual b~(-z).
struct UpperProblem {
  Coefficient coeff;
  std::function<double(double)> b;
  double half_period = 1.0;  // barrier-width budget L/2
};

double probe_ratio(const UpperProblem& prob, double z, bool* valid) {
  *valid = true;
  const double bz = prob.b(z);
  if (bz == 0.0) return 0.0;
  double cap;
  try {
    cap = moment(prob.coeff, z, kInf);
  } catch (const DomainError&) {
    *valid = false;
    return kInf;
  } catch (const QuadratureFailure&) {
    *valid = false;
    return kInf;
  }
  if (std::isinf(cap)) return 0.0;
  if (!(cap > 0)) {
    *valid = false;
    return kInf;
  }
  return bz / std::sqrt(cap);
}

// Probes the ratio grid.  The numeric verdict is only trusted for continuous
// coefficients: the singular homogeneous family degenerates as z -> 0 where
// no translator barrier exists, so there the analytic family rules decide.
CriterionReport criterion_probe(const UpperProblem& prob) {
  CriterionReport rep;
  const bool allow_numeric_verdict = !prob.coeff.singular_at_zero();
  bool saw_zero_b = false;
  std::vector<std::pair<double, double>> ratios;  // (z, ratio) valid probes
  for (double z : probe_grid()) {
    if (prob.coeff.singular_at_zero() && z < 0) continue;
    bool valid = false;
    const double r = probe_ratio(prob, z, &valid);
    if (!valid) continue;
    if (prob.b(z) == 0.0) saw_zero_b = true;
    ratios.emplace_back(z, r);
    if (r < rep.value) {
      rep.value = r;
      rep.minimizing_z = z;
    }
  }
  rep.satisfied = Outcome::Inconclusive;
  if (saw_zero_b) {
    rep.satisfied = Outcome::Yes;  // b hits zero: the infimum is exactly 0
    return rep;
  }
  if (!allow_numeric_verdict) return rep;
  // monotone decrease of the tail below 1e-6 b(0)
  const double floor = 1e-6 * prob.b(0.0);
  if (ratios.size() >= 6) {
    bool decreasing = true;
    for (size_t i = ratios.size() - 5; i < ratios.size(); ++i)
      if (ratios[i].second >= ratios[i - 1].second) decreasing = false;
    if (decreasing && ratios.back().second < floor) rep.satisfied = Outcome::Yes;
  }
  if (rep.value == 0.0) rep.satisfied = Outcome::Yes;
  return rep;
}

Outcome tail_verdict(const ExtReal& b_tail) {
  if (b_tail.is_inconclusive()) return Outcome::Inconclusive;
  if (b_tail.is_infinite()) return Outcome::Yes;
  return Outcome::No;
}

double inner_upper_bound(const UpperProblem& prob, double z, double t, bool* valid) {
  *valid = true;
  const double bz = prob.b(z);
  const double target = bz * bz / t;
  try {
    if (target == 0.0) return z;
    const double cap = moment(prob.coeff, z, kInf);
    if (!(cap > target)) return kInf;
    double lo = z;
    double step = std::max(1e-9, 1e-9 * std::abs(z));
    double hi = z + step;
    int guard = 0;
    while (moment(prob.coeff, z, hi) < target) {
      step *= 2.0;
      hi = z + step;
      if (++guard > 400) return kInf;
    }
    RootOptions opts;
    opts.rel_tol = 1e-9;
    opts.abs_tol = 1e-12;
    auto g = [&](double Z) { return moment(prob.coeff, z, Z) - target; };
    const double Z_eq = bisect_increasing(g, lo, hi, opts);
    if (prob.coeff.singular_at_zero()) {
      // for singular alpha the comparison barrier must fit in [0, L/2]; its
      // width blows up as the slope range approaches the singularity
      const double width = t * integrate_alpha_between(prob.coeff, z, Z_eq) / bz;
      if (!(width <= prob.half_period)) {
        *valid = false;
        return kInf;
      }
    }
    return Z_eq;
  } catch (const DomainError&) {
    *valid = false;
    return kInf;
  } catch (const QuadratureFailure&) {
    *valid = false;
    return kInf;
  }
}

SideBound upper_bound_core(const UpperProblem& prob, double t, CriterionReport crit) {
  SideBound side;
  side.criterion = crit;
  if (crit.satisfied == Outcome::No) {
    side.value = kInf;
    return side;
  }
  const std::vector<double> zs = probe_grid();
  std::vector<double> candidate(zs.size(), kInf);
  side.value = kInf;
  int best = -1;
  for (size_t i = 0; i < zs.size(); ++i) {
    if (prob.coeff.singular_at_zero() && zs[i] < 0) continue;
    bool valid = false;
    const double Z = inner_upper_bound(prob, zs[i], t, &valid);
    if (!valid) continue;
    if (Z < 0) continue;  // vacuous for the one-sided slope of a concave barrier
    candidate[i] = Z;
    if (Z < side.value) {
      side.value = Z;
      side.minimizing_z = zs[i];
      best = static_cast<int>(i);
    }
  }
  if (best >= 0) {
    // golden refinement between the neighbouring probes
    const double lo = best > 0 ? zs[best - 1] : zs[best] - 1.0;
    const double hi = best + 1 < static_cast<int>(zs.size()) ? zs[best + 1] : zs[best] + 1.0;
    auto f = [&](double z) {
      if (prob.coeff.singular_at_zero() && z < 0) return kInf;
      bool valid = false;
      const double Z = inner_upper_bound(prob, z, t, &valid);
      if (!valid || Z < 0) return kInf;
      return Z;
    };
    const double z_star = golden_minimize(f, lo, hi, 100);
    const double refined = f(z_star);
    if (refined < side.value) {
      side.value = refined;
      side.minimizing_z = z_star;
    }
  }
  return side;
}

UpperProblem upper_problem(const Coefficient& coeff, const ModulusFunction& psi) {
  return {coeff, [psi](double z) { return legendre_b(psi, z); }, psi.half_period};
}

UpperProblem lower_as_upper(const Coefficient& coeff, const ModulusFunction& psi) {
  return {reflect_coefficient(coeff),
          [psi](double zeta) { return legendre_b_tilde(psi, -zeta); }, psi.half_period};
}

}  // namespace

CriterionReport criterion_upper(const Coefficient& coeff, const ModulusFunction& psi) {
  UpperProblem prob = upper_problem(coeff, psi);
  CriterionReport rep = criterion_probe(prob);
  if (rep.satisfied == Outcome::Yes) return rep;

  if (psi.form == ModulusFunction::Form::Hoelder && psi.beta == 1.0) {
    rep.satisfied = Outcome::Yes;
    return rep;
  }
  const Outcome by_tail = tail_verdict(limits(coeff).b_plus);
  if (by_tail != Outcome::No) {
    rep.satisfied = by_tail;
    return rep;
  }
  // finite right tail of B
  switch (psi.form) {
    case ModulusFunction::Form::Constant:
      rep.satisfied = Outcome::No;
      break;
    case ModulusFunction::Form::PiecewiseLinear:
      // a zero left endpoint was caught by the b == 0 probe rule
      rep.satisfied = Outcome::No;
      break;
    case ModulusFunction::Form::Hoelder: {
      auto gamma = coeff.tail_exponent();
      if (!gamma) {
        rep.satisfied = Outcome::Inconclusive;
      } else {
        rep.satisfied =
            *gamma < 2.0 / (1.0 - psi.beta) - 1e-12 ? Outcome::Yes : Outcome::No;
      }
      break;
    }
  }
  return rep;
}

CriterionReport criterion_lower(const Coefficient& coeff, const ModulusFunction& psi) {
  UpperProblem prob = lower_as_upper(coeff, psi);
  CriterionReport rep = criterion_probe(prob);
  if (rep.minimizing_z == rep.minimizing_z) rep.minimizing_z = -rep.minimizing_z;
  if (rep.satisfied == Outcome::Yes) return rep;

  const Outcome by_tail = tail_verdict(limits(coeff).b_minus);
  if (by_tail != Outcome::No) {
    rep.satisfied = by_tail;
    return rep;
  }
  // all modulus forms keep b~ bounded below by psi(L/2-) here; a vanishing
  // right endpoint was caught by the b~ == 0 probe rule
  rep.satisfied = Outcome::No;
  return rep;
}

SideBound gradient_bound_upper(const Coefficient& coeff, const ModulusFunction& psi,
                               double t) {
  if (t <= 0) throw DomainError("gradient_bound_upper needs t > 0");
  CriterionReport crit = criterion_upper(coeff, psi);
  return upper_bound_core(upper_problem(coeff, psi), t, crit);
}

SideBound gradient_bound_lower(const Coefficient& coeff, const ModulusFunction& psi,
                               double t) {
  if (t <= 0) throw DomainError("gradient_bound_lower needs t > 0");
  CriterionReport crit = criterion_lower(coeff, psi);
  CriterionReport mirrored = crit;
  if (mirrored.minimizing_z == mirrored.minimizing_z)
    mirrored.minimizing_z = -mirrored.minimizing_z;
  SideBound side = upper_bound_core(lower_as_upper(coeff, psi), t, mirrored);
  side.criterion = crit;
  side.value = -side.value;
  if (side.minimizing_z == side.minimizing_z) side.minimizing_z = -side.minimizing_z;
  return side;
}

GradientBoundReport gradient_bound_report(const Coefficient& coeff,
                                          const ModulusFunction& psi, double t) {
  GradientBoundReport rep;
  rep.t = t;
  rep.upper = gradient_bound_upper(coeff, psi, t);
  rep.lower = gradient_bound_lower(coeff, psi, t);
  return rep;
}

std::pair<double, double> oscillation_bound(const Coefficient& coeff, double M, double t) {
  if (M <= 0 || t <= 0) throw DomainError("oscillation_bound needs M > 0, t > 0");
  const double target = M * M / t;
  IntegralPair pair = limits(coeff);

  auto solve_side = [&](bool positive) -> double {
    const ExtReal& tail = positive ? pair.b_plus : pair.b_minus;
    if (tail.is_inconclusive())
      throw QuadratureFailure("oscillation_bound: tail classification inconclusive");
    auto B = [&](double w) { return integrate_B(coeff, positive ? w : -w); };
    if (tail.finite_extent()) {
      double cap = tail.value;
      if (std::isnan(cap)) cap = B(std::ldexp(1.0, 40));
      if (cap <= target) return kInf;
    }
    double hi = 1.0;
    int guard = 0;
    while (B(hi) < target) {
      hi *= 2.0;
      if (++guard > 400)
        throw QuadratureFailure("oscillation_bound: bracket expansion failed");
    }
    RootOptions opts;
    opts.rel_tol = 1e-10;
    auto g = [&](double w) { return B(w) - target; };
    return bisect_increasing(g, 0.0, hi, opts);
  };

  const double xi_max = solve_side(true);
  const double xi_min = solve_side(false);
  return {std::isinf(xi_min) ? -kInf : -xi_min, xi_max};
}

LipschitzReport lipschitz_classifier(const Coefficient& coeff) {
  IntegralPair pair = limits(coeff);
  LipschitzReport rep;
  auto verdict = [](const ExtReal& e) {
    if (e.is_inconclusive()) return Outcome::Inconclusive;
    return e.is_infinite() ? Outcome::Yes : Outcome::No;
  };
  rep.bounded_above = verdict(pair.b_plus);
  rep.bounded_below = verdict(pair.b_minus);
  return rep;
}

double csf_implicit_supersolution(double xi, double t) {
  if (t <= 0) throw DomainError("csf_implicit_supersolution needs t > 0");
  if (xi < 0) throw NoRootError("csf_implicit_supersolution: xi must be nonnegative");
  auto forward = [&](double psi) {
    const double a = psi - 1.0;
    const double b = psi + 1.0;
    return (std::exp(-a * a / (8 * t)) - std::exp(-b * b / (8 * t))) / std::sqrt(t);
  };
  if (xi > forward(0.5))
    throw NoRootError("csf_implicit_supersolution: xi unattainable at this t");
  RootOptions opts;
  opts.rel_tol = 0.0;
  opts.abs_tol = 1e-10;
  return bisect_increasing([&](double p) { return forward(p) - xi; }, 0.0, 0.5, opts);
}

double csf_small_time_slope_bound(double t, double M) {
  if (t <= 0 || M <= 0) throw DomainError("csf_small_time_slope_bound needs t > 0, M > 0");
  const double s = t / (M * M);
  return 2.0 * std::pow(s, 1.5) * std::exp(1.0 / (8.0 * s));
}

}  // namespace modcont
