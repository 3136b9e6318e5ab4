#include "modcont/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "modcont/errors.hpp"
#include "modcont/quadrature.hpp"

namespace modcont {

namespace {

double default_asymhom(double gamma, double p) {
  return std::pow(1.0 + p * p, -0.5 * gamma);
}

double tabulated_alpha(const std::vector<std::pair<double, double>>& s, double p) {
  if (p <= s.front().first) return s.front().second;
  if (p >= s.back().first) return s.back().second;
  auto it = std::upper_bound(s.begin(), s.end(), p,
                             [](double v, const auto& e) { return v < e.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (p - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace

// Every built-in family is even, so only the sampled and custom evaluators
// need real work.
Coefficient reflect_coefficient(const Coefficient& c) {
  switch (c.family) {
    case Coefficient::Family::Tabulated: {
      std::vector<std::pair<double, double>> rev(c.samples.rbegin(), c.samples.rend());
      for (auto& e : rev) e.first = -e.first;
      return Coefficient::tabulated(std::move(rev));
    }
    case Coefficient::Family::Custom: {
      auto f = c.evaluator;
      std::optional<std::pair<double, double>> range;
      if (c.clamp_range) range = std::pair{-c.clamp_range->second, -c.clamp_range->first};
      return Coefficient::custom([f](double p) { return f(-p); }, range);
    }
    case Coefficient::Family::AsymptoticallyHomogeneous:
      if (c.evaluator) {
        auto f = c.evaluator;
        return Coefficient::asymptotically_homogeneous(
            c.gamma, [f](double p) { return f(-p); });
      }
      return c;
    default:
      return c;
  }
}

namespace {

// Antiderivative of alpha on the connected component of s (anchored at 0
// whenever the anchor is integrable).
double anti_A(const Coefficient& c, double s) {
  using F = Coefficient::Family;
  switch (c.family) {
    case F::Heat:
      return s;
    case F::CurveShortening:
      return std::atan(s);
    case F::NonparametricCS:
      return s / std::sqrt(1.0 + s * s);
    case F::Homogeneous: {
      const double g = c.gamma;
      if (s == 0.0) {
        if (g >= 1.0) throw DomainError("homogeneous A: non-integrable at 0 for gamma >= 1");
        return 0.0;
      }
      if (g == 1.0) return (s > 0 ? 1.0 : -1.0) * std::log(std::abs(s));
      return (s > 0 ? 1.0 : -1.0) * std::pow(std::abs(s), 1.0 - g) / (1.0 - g);
    }
    case F::AsymptoticallyHomogeneous:
      if (!c.evaluator) {
        if (c.gamma == 1.0) return std::asinh(s);
        if (c.gamma == 2.0) return std::atan(s);
        if (c.gamma == 3.0) return s / std::sqrt(1.0 + s * s);
      }
      return integrate([&](double t) { return eval_alpha(c, t); }, 0.0, s);
    default:
      return integrate([&](double t) { return eval_alpha(c, t); }, 0.0, s);
  }
}

// Antiderivative of s * alpha(s), same anchoring rules.
double anti_B(const Coefficient& c, double s) {
  using F = Coefficient::Family;
  switch (c.family) {
    case F::Heat:
      return 0.5 * s * s;
    case F::CurveShortening:
      return 0.5 * std::log1p(s * s);
    case F::NonparametricCS:
      return 1.0 - 1.0 / std::sqrt(1.0 + s * s);
    case F::Homogeneous: {
      const double g = c.gamma;
      if (s == 0.0) {
        if (g >= 2.0) throw DomainError("homogeneous B: non-integrable at 0 for gamma >= 2");
        return 0.0;
      }
      if (g == 2.0) return std::log(std::abs(s));
      return std::pow(std::abs(s), 2.0 - g) / (2.0 - g);
    }
    case F::AsymptoticallyHomogeneous:
      if (!c.evaluator) {
        if (c.gamma == 2.0) return 0.5 * std::log1p(s * s);
        return (std::pow(1.0 + s * s, 0.5 * (2.0 - c.gamma)) - 1.0) / (2.0 - c.gamma);
      }
      return integrate([&](double t) { return t * eval_alpha(c, t); }, 0.0, s);
    default:
      return integrate([&](double t) { return t * eval_alpha(c, t); }, 0.0, s);
  }
}

// Exact piecewise integration of the clamped tabulated family.
double tabulated_anti(const Coefficient& c, double s, bool weighted) {
  auto seg = [&](double a, double b) {
    // integrand on [a,b]: alpha linear there
    const double fa = tabulated_alpha(c.samples, a);
    const double fb = tabulated_alpha(c.samples, b);
    if (!weighted) return 0.5 * (fa + fb) * (b - a);
    // s*alpha with alpha linear: Simpson is exact for the cubic
    const double m = 0.5 * (a + b);
    const double fm = tabulated_alpha(c.samples, m);
    return (b - a) / 6.0 * (a * fa + 4.0 * m * fm + b * fb);
  };
  double lo = std::min(0.0, s), hi = std::max(0.0, s);
  std::vector<double> cuts{lo};
  for (const auto& e : c.samples)
    if (e.first > lo && e.first < hi) cuts.push_back(e.first);
  cuts.push_back(hi);
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) total += seg(cuts[i], cuts[i + 1]);
  return s >= 0 ? total : -total;
}

}  // namespace

Coefficient Coefficient::heat() {
  Coefficient c;
  c.family = Family::Heat;
  return c;
}

Coefficient Coefficient::curve_shortening() {
  Coefficient c;
  c.family = Family::CurveShortening;
  return c;
}

Coefficient Coefficient::nonparametric_cs() {
  Coefficient c;
  c.family = Family::NonparametricCS;
  return c;
}

Coefficient Coefficient::homogeneous(double gamma) {
  if (gamma <= 0) throw DomainError("homogeneous family needs gamma > 0");
  Coefficient c;
  c.family = Family::Homogeneous;
  c.gamma = gamma;
  return c;
}

Coefficient Coefficient::asymptotically_homogeneous(double gamma) {
  if (gamma <= 0) throw DomainError("asymptotically homogeneous family needs gamma > 0");
  Coefficient c;
  c.family = Family::AsymptoticallyHomogeneous;
  c.gamma = gamma;
  return c;
}

Coefficient Coefficient::asymptotically_homogeneous(double gamma,
                                                    std::function<double(double)> alpha) {
  Coefficient c = asymptotically_homogeneous(gamma);
  c.evaluator = std::move(alpha);
  return c;
}

Coefficient Coefficient::tabulated(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw DomainError("tabulated coefficient needs >= 2 samples");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].second <= 0)
      throw NonPositiveDiffusivity("tabulated coefficient has alpha <= 0");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw DomainError("tabulated samples must be strictly increasing in p");
  }
  Coefficient c;
  c.family = Family::Tabulated;
  c.samples = std::move(samples);
  return c;
}

Coefficient Coefficient::custom(std::function<double(double)> alpha,
                                std::optional<std::pair<double, double>> clamp) {
  Coefficient c;
  c.family = Family::Custom;
  c.evaluator = std::move(alpha);
  c.clamp_range = clamp;
  return c;
}

std::optional<double> Coefficient::tail_exponent() const {
  switch (family) {
    case Family::Heat: return 0.0;
    case Family::CurveShortening: return 2.0;
    case Family::NonparametricCS: return 3.0;
    case Family::Homogeneous:
    case Family::AsymptoticallyHomogeneous: return gamma;
    default: return std::nullopt;
  }
}

Coefficient Coefficient::parse(const std::string& spec) {
  auto get_param = [&](const std::string& body, const std::string& key) {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq != std::string::npos && item.substr(0, eq) == key)
        return std::stod(item.substr(eq + 1));
    }
    throw DomainError("coefficient spec missing parameter " + key + ": " + spec);
  };
  if (spec == "heat") return heat();
  if (spec == "csf") return curve_shortening();
  if (spec == "npcsf") return nonparametric_cs();
  if (spec.rfind("hom:", 0) == 0) return homogeneous(get_param(spec.substr(4), "gamma"));
  if (spec.rfind("asymhom:", 0) == 0)
    return asymptotically_homogeneous(get_param(spec.substr(8), "gamma"));
  if (spec.rfind("table:", 0) == 0) {
    std::ifstream in(spec.substr(6));
    if (!in) throw DomainError("cannot open coefficient table " + spec.substr(6));
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::string a, b;
      if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
      try {
        samples.emplace_back(std::stod(a), std::stod(b));
      } catch (const std::exception&) {
        // header row
      }
    }
    return tabulated(std::move(samples));
  }
  throw DomainError("unknown coefficient spec: " + spec);
}

std::string Coefficient::describe() const {
  switch (family) {
    case Family::Heat: return "heat";
    case Family::CurveShortening: return "csf";
    case Family::NonparametricCS: return "npcsf";
    case Family::Homogeneous: return "hom:gamma=" + std::to_string(gamma);
    case Family::AsymptoticallyHomogeneous: return "asymhom:gamma=" + std::to_string(gamma);
    case Family::Tabulated: return "table";
    default: return "custom";
  }
}

double eval_alpha(const Coefficient& c, double p) {
  using F = Coefficient::Family;
  switch (c.family) {
    case F::Heat:
      return 1.0;
    case F::CurveShortening:
      return 1.0 / (1.0 + p * p);
    case F::NonparametricCS:
      return std::pow(1.0 + p * p, -1.5);
    case F::Homogeneous:
      if (p == 0.0) throw DomainError("homogeneous alpha undefined at p = 0");
      return std::pow(std::abs(p), -c.gamma);
    case F::AsymptoticallyHomogeneous: {
      double a = c.evaluator ? c.evaluator(p) : default_asymhom(c.gamma, p);
      if (!(a > 0)) throw NonPositiveDiffusivity("asymhom evaluator returned alpha <= 0");
      return a;
    }
    case F::Tabulated:
      return tabulated_alpha(c.samples, p);
    case F::Custom: {
      double q = p;
      if (c.clamp_range) q = std::clamp(q, c.clamp_range->first, c.clamp_range->second);
      double a = c.evaluator(q);
      if (!(a > 0)) throw NonPositiveDiffusivity("custom evaluator returned alpha <= 0");
      return a;
    }
  }
  throw DomainError("unreachable coefficient family");
}

double integrate_A(const Coefficient& c, double xi) {
  if (!std::isfinite(xi)) throw DomainError("integrate_A: xi must be finite");
  if (c.family == Coefficient::Family::Tabulated) return tabulated_anti(c, xi, false);
  if (c.family == Coefficient::Family::Homogeneous && c.gamma >= 1.0 && xi != 0.0)
    throw DomainError("integrate_A: homogeneous anchor at 0 non-integrable for gamma >= 1");
  return anti_A(c, xi) - (c.singular_at_zero() ? 0.0 : anti_A(c, 0.0));
}

double integrate_B(const Coefficient& c, double xi) {
  if (!std::isfinite(xi)) throw DomainError("integrate_B: xi must be finite");
  if (c.family == Coefficient::Family::Tabulated) return tabulated_anti(c, xi, true);
  if (c.family == Coefficient::Family::Homogeneous && c.gamma >= 2.0 && xi != 0.0)
    throw DomainError("integrate_B: homogeneous anchor at 0 non-integrable for gamma >= 2");
  return anti_B(c, xi) - (c.singular_at_zero() ? 0.0 : anti_B(c, 0.0));
}

namespace {

ExtReal tail_limit(const Coefficient& c, bool weighted, bool positive_side) {
  using F = Coefficient::Family;
  auto probe = [&]() -> ExtReal {
    bool inconclusive = false;
    auto f = [&](double u) {
      double p = positive_side ? u : -u;
      double a = eval_alpha(c, p);
      return weighted ? u * a : a;
    };
    double v = integrate_to_infinity(f, 0.0, &inconclusive);
    if (inconclusive) return ExtReal::unknown();
    if (std::isinf(v)) return ExtReal::pos_inf();
    return ExtReal::finite(v);
  };
  switch (c.family) {
    case F::Heat:
      return ExtReal::pos_inf();
    case F::CurveShortening:
      return weighted ? ExtReal::pos_inf() : ExtReal::finite(M_PI / 2.0);
    case F::NonparametricCS:
      return ExtReal::finite(1.0);
    case F::Homogeneous: {
      const double g = c.gamma;
      if (weighted) {
        if (g <= 2.0) return ExtReal::pos_inf();
        return ExtReal::finite_unanchored();
      }
      if (g <= 1.0) return ExtReal::pos_inf();
      return ExtReal::finite_unanchored();
    }
    case F::AsymptoticallyHomogeneous: {
      const double g = c.gamma;
      if ((weighted && g <= 2.0) || (!weighted && g <= 1.0)) return ExtReal::pos_inf();
      if (!c.evaluator && weighted) return ExtReal::finite(1.0 / (g - 2.0));
      if (!c.evaluator && !weighted) {
        if (g == 2.0) return ExtReal::finite(M_PI / 2.0);
        if (g == 3.0) return ExtReal::finite(1.0);
      }
      ExtReal r = probe();
      // the declared exponent already settles finiteness
      if (r.inconclusive) return ExtReal::finite_unanchored();
      return r;
    }
    case F::Tabulated:
      return ExtReal::pos_inf();  // clamped constant tails
    case F::Custom:
      if (c.clamp_range) return ExtReal::pos_inf();
      return probe();
  }
  return ExtReal::unknown();
}

}  // namespace

IntegralPair limits(const Coefficient& c) {
  IntegralPair pair;
  Coefficient copy = c;
  pair.A = [copy](double xi) { return integrate_A(copy, xi); };
  pair.B = [copy](double xi) { return integrate_B(copy, xi); };

  ExtReal ap = tail_limit(c, false, true);
  ExtReal am = tail_limit(c, false, false);
  ExtReal bp = tail_limit(c, true, true);
  ExtReal bm = tail_limit(c, true, false);
  // A is odd-oriented: the limit at -inf carries a minus sign.
  if (!am.inconclusive && std::isfinite(am.value)) am.value = -am.value;
  if (am.is_infinite()) am.value = -kInf;
  pair.a_plus = ap;
  pair.a_minus = am;
  pair.b_plus = bp;
  pair.b_minus = bm;
  return pair;
}

double moment(const Coefficient& c, double z, double Z) {
  if (Z < z) throw DomainError("moment: requires z <= Z");
  if (Z == z) return 0.0;
  const bool singular = c.singular_at_zero();
  const double g = c.gamma;

  if (std::isinf(Z)) {
    ExtReal bp = tail_limit(c, true, true);
    if (bp.is_inconclusive())
      throw QuadratureFailure("moment: tail classification inconclusive");
    if (bp.is_infinite()) return kInf;
    // finite tail: (B(inf)-B(z)) - z (A(inf)-A(z)) with a shared anchor
    if (singular) {
      if (z < 0.0) throw DomainError("moment: singular interior at 0");
      if (z == 0.0) {
        if (g >= 2.0) return kInf;  // positive divergent
        throw DomainError("unreachable: gamma < 2 has infinite tail");
      }
      // one-sided antiderivatives vanish at +inf for gamma > 2
      return -anti_B(c, z) + z * anti_A(c, z);
    }
    ExtReal apv = tail_limit(c, false, true);
    double a_inf = apv.value;
    if (!std::isfinite(a_inf) || std::isnan(a_inf)) {
      bool inc = false;
      a_inf = integrate_to_infinity([&](double s) { return eval_alpha(c, s); }, 0.0, &inc);
      if (inc) throw QuadratureFailure("moment: A tail inconclusive");
    }
    double b_inf = bp.value;
    if (std::isnan(b_inf)) {
      bool inc = false;
      b_inf = integrate_to_infinity([&](double s) { return s * eval_alpha(c, s); }, 0.0, &inc);
      if (inc) throw QuadratureFailure("moment: B tail inconclusive");
    }
    return (b_inf - integrate_B(c, z)) - z * (a_inf - integrate_A(c, z));
  }

  if (singular) {
    const bool crosses = z < 0.0 && Z > 0.0;
    if (crosses) {
      if (g >= 1.0) throw DomainError("moment: non-integrable singularity inside [z, Z]");
    } else if (z == 0.0) {
      if (g >= 2.0) throw DomainError("moment: weight cannot tame gamma >= 2 at z = 0");
      return anti_B(c, Z);  // anti_B(0)=0 for gamma < 2
    } else if (Z == 0.0) {
      if (g >= 1.0) throw DomainError("moment: non-integrable singularity at right endpoint");
    }
    // one-sided or integrable-crossing evaluation
    if (crosses || z == 0.0 || Z == 0.0) {
      // gamma < 1 (< 2 when an endpoint is 0): anchored forms are continuous
      return (integrate_B(c, Z) - integrate_B(c, z)) - z * (integrate_A(c, Z) - integrate_A(c, z));
    }
    return (anti_B(c, Z) - anti_B(c, z)) - z * (anti_A(c, Z) - anti_A(c, z));
  }

  if (c.family == Coefficient::Family::Custom ||
      (c.family == Coefficient::Family::AsymptoticallyHomogeneous && c.evaluator)) {
    return integrate([&](double s) { return (s - z) * eval_alpha(c, s); }, z, Z);
  }
  return (integrate_B(c, Z) - integrate_B(c, z)) - z * (integrate_A(c, Z) - integrate_A(c, z));
}

double moment_lower(const Coefficient& c, double z, double Z) {
  if (Z > z) throw DomainError("moment_lower: requires Z <= z");
  return moment(reflect_coefficient(c), -z, std::isinf(Z) ? kInf : -Z);
}

double integrate_alpha_between(const Coefficient& c, double a, double b) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  if (c.singular_at_zero()) {
    const double g = c.gamma;
    const bool touches_zero = a <= 0.0 && b >= 0.0;
    if (touches_zero && g >= 1.0) return sign * kInf;
    if (touches_zero) {
      return sign * (integrate_A(c, b) - integrate_A(c, a));
    }
    return sign * (anti_A(c, b) - anti_A(c, a));
  }
  return sign * (integrate_A(c, b) - integrate_A(c, a));
}

}  // namespace modcont
