#include "modcont/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "modcont/errors.hpp"

namespace modcont {

namespace {

double pl_eval(const std::vector<std::pair<double, double>>& s, double z) {
  if (z <= s.front().first) return s.front().second;
  if (z >= s.back().first) return s.back().second;
  auto it = std::upper_bound(s.begin(), s.end(), z,
                             [](double v, const auto& e) { return v < e.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (z - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace

double ModulusFunction::eval(double z) const {
  const double zc = std::clamp(z, 0.0, half_period);
  switch (form) {
    case Form::Constant:
      return M;
    case Form::Hoelder:
      return K * std::pow(zc, beta);
    case Form::PiecewiseLinear:
      return pl_eval(samples, zc);
  }
  return 0.0;
}

double ModulusFunction::sup() const {
  switch (form) {
    case Form::Constant:
      return M;
    case Form::Hoelder:
      return K * std::pow(half_period, beta);
    case Form::PiecewiseLinear: {
      double m = 0.0;
      for (const auto& e : samples) m = std::max(m, e.second);
      return m;
    }
  }
  return 0.0;
}

ModulusFunction ModulusFunction::constant(double M, double L) {
  if (M <= 0) throw DomainError("constant modulus needs M > 0");
  if (L <= 0) throw DomainError("modulus needs a positive period");
  ModulusFunction psi;
  psi.form = Form::Constant;
  psi.M = M;
  psi.half_period = L / 2.0;
  return psi;
}

ModulusFunction ModulusFunction::hoelder(double K, double beta, double L) {
  if (K <= 0 || beta <= 0 || beta > 1)
    throw DomainError("hoelder modulus needs K > 0 and beta in (0, 1]");
  if (L <= 0) throw DomainError("modulus needs a positive period");
  ModulusFunction psi;
  psi.form = Form::Hoelder;
  psi.K = K;
  psi.beta = beta;
  psi.half_period = L / 2.0;
  return psi;
}

ModulusFunction ModulusFunction::piecewise(std::vector<std::pair<double, double>> samples,
                                           double L) {
  if (L <= 0) throw DomainError("modulus needs a positive period");
  if (samples.size() < 2) throw DomainError("piecewise modulus needs >= 2 samples");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first < 0 || samples[i].first > L / 2.0)
      throw DomainError("piecewise modulus sample outside [0, L/2]");
    if (i > 0 && samples[i].first <= samples[i - 1].first)
      throw DomainError("piecewise modulus samples must be strictly increasing in z");
    bool interior = samples[i].first > 0 && samples[i].first < L / 2.0;
    if (interior && samples[i].second <= 0)
      throw DomainError("piecewise modulus must be positive on (0, L/2)");
    if (samples[i].second < 0) throw DomainError("piecewise modulus must be nonnegative");
  }
  // concavity: decreasing chord slopes
  for (size_t i = 2; i < samples.size(); ++i) {
    double s1 = (samples[i - 1].second - samples[i - 2].second) /
                (samples[i - 1].first - samples[i - 2].first);
    double s2 = (samples[i].second - samples[i - 1].second) /
                (samples[i].first - samples[i - 1].first);
    if (s2 > s1 + 1e-9 * (1.0 + std::abs(s1)))
      throw DomainError("piecewise modulus is not concave");
  }
  ModulusFunction psi;
  psi.form = Form::PiecewiseLinear;
  psi.samples = std::move(samples);
  psi.half_period = L / 2.0;
  return psi;
}

ModulusFunction ModulusFunction::parse(const std::string& spec, double L) {
  auto params = [&](const std::string& body) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("bad modulus spec: " + spec);
      out.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    }
    return out;
  };
  auto find = [&](const std::vector<std::pair<std::string, double>>& ps,
                  const std::string& key) {
    for (const auto& p : ps)
      if (p.first == key) return p.second;
    throw DomainError("modulus spec missing " + key + ": " + spec);
  };
  if (spec.rfind("const:", 0) == 0) {
    auto ps = params(spec.substr(6));
    return constant(find(ps, "M"), L);
  }
  if (spec.rfind("hoelder:", 0) == 0) {
    auto ps = params(spec.substr(8));
    return hoelder(find(ps, "K"), find(ps, "beta"), L);
  }
  if (spec.rfind("pl:", 0) == 0) {
    std::ifstream in(spec.substr(3));
    if (!in) throw DomainError("cannot open modulus table " + spec.substr(3));
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
      }
    }
    return piecewise(std::move(samples), L);
  }
  throw DomainError("unknown modulus spec: " + spec);
}

std::string ModulusFunction::describe() const {
  switch (form) {
    case Form::Constant: return "const:M=" + std::to_string(M);
    case Form::Hoelder:
      return "hoelder:K=" + std::to_string(K) + ",beta=" + std::to_string(beta);
    default: return "pl";
  }
}

double PeriodicField::osc() const {
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return *mx - *mn;
}

double legendre_b(const ModulusFunction& psi, double z) {
  const double half = psi.half_period;
  switch (psi.form) {
    case ModulusFunction::Form::Constant:
      return z >= 0 ? psi.M : psi.M - half * z;
    case ModulusFunction::Form::Hoelder: {
      const double K = psi.K, beta = psi.beta;
      if (beta == 1.0) {
        return z >= K ? 0.0 : half * (K - z);
      }
      const double z_t = K * beta * std::pow(half, beta - 1.0);
      if (z <= z_t) return K * std::pow(half, beta) - half * z;
      return (1.0 - beta) * std::pow(K, 1.0 / (1.0 - beta)) *
             std::pow(beta, beta / (1.0 - beta)) * std::pow(z, -beta / (1.0 - beta));
    }
    case ModulusFunction::Form::PiecewiseLinear: {
      double best = psi.samples.front().second;  // x = 0 candidate, clamped value
      best = std::max(best, psi.samples.back().second - half * z);  // x = L/2
      for (const auto& e : psi.samples) best = std::max(best, e.second - e.first * z);
      return best;
    }
  }
  return 0.0;
}

double legendre_b_tilde(const ModulusFunction& psi, double z) {
  return legendre_b(psi, z) + psi.half_period * z;
}

ModulusCheckReport check_modulus(const PeriodicField& u, const ModulusFunction& psi) {
  const double L = u.period;
  if (std::abs(L - psi.period()) > 1e-9 * std::max(1.0, L))
    throw PeriodMismatch("check_modulus: field period != 2 * psi half-period");
  if (u.size() < 4) throw DomainError("check_modulus: field needs >= 4 nodes");
  const int n = u.size();
  const double h = u.h();
  std::vector<double> two_psi(n);
  for (int d = 1; d < n; ++d) two_psi[d] = 2.0 * psi.eval(0.5 * d * h);

  ModulusCheckReport report;
  report.worst_violation = -kInf;
  for (int i = 0; i < n; ++i) {
    const double ui = u.values[i];
    for (int d = 1; d < n; ++d) {
      const double diff = u.at(i + d) - ui;
      // upper inequality for (x_i, x_i + d h); the lower inequality of the
      // complementary pair is the same scan at separation n - d
      const double excess = diff - two_psi[d];
      if (excess > report.worst_violation) {
        report.worst_violation = excess;
        report.witness = {i * h, (i + d) * h};
      }
    }
  }
  report.holds = report.worst_violation <= 1e-9 * u.osc();
  return report;
}

// --- mollification -------------------------------------------------------

namespace {

// C^2 bump (35/32)(1-u^2)^3 on [-1,1]; R = cdf, M1 = first moment from -1.
double kernel_cdf(double u) {
  u = std::clamp(u, -1.0, 1.0);
  const double u2 = u * u;
  return 35.0 / 32.0 * (u - u2 * u + 0.6 * u2 * u2 * u - u2 * u2 * u2 * u / 7.0) + 0.5;
}

double kernel_m1(double u) {
  u = std::clamp(u, -1.0, 1.0);
  const double u2 = u * u;
  return 35.0 / 32.0 *
         (0.5 * u2 - 0.75 * u2 * u2 + 0.5 * u2 * u2 * u2 - 0.125 * u2 * u2 * u2 * u2 - 0.125);
}

}  // namespace

double MollifiedPsi::hat(double z) const {
  if (z <= node_z_.front()) return node_v_.front() + slope_left_ * (z - node_z_.front());
  if (z >= node_z_.back()) return node_v_.back() + slope_right_ * (z - node_z_.back());
  auto it = std::upper_bound(node_z_.begin(), node_z_.end(), z);
  size_t j = static_cast<size_t>(it - node_z_.begin());
  const double w = (z - node_z_[j - 1]) / (node_z_[j] - node_z_[j - 1]);
  return node_v_[j - 1] + w * (node_v_[j] - node_v_[j - 1]);
}

double MollifiedPsi::smoothed(double z) const {
  const double w = width_;
  const double lo = z - w, hi = z + w;
  // segment endpoints of the piecewise-linear hat inside [lo, hi]
  auto first = std::upper_bound(node_z_.begin(), node_z_.end(), lo);
  double total = 0.0;
  double s1 = lo;
  auto segment = [&](double a, double b) {
    // hat is linear on [a, b]: value = va + slope (s - a)
    const double va = hat(a);
    const double vb = hat(b);
    const double slope = (vb - va) / (b - a);
    const double intercept = va - slope * a;
    const double w_hi = (z - a) / w;  // in [-1, 1]
    const double w_lo = (z - b) / w;
    const double dR = kernel_cdf(w_hi) - kernel_cdf(w_lo);
    const double dM = kernel_m1(w_hi) - kernel_m1(w_lo);
    total += (intercept + slope * z) * dR - slope * w * dM;
  };
  for (auto it = first; it != node_z_.end() && *it < hi; ++it) {
    segment(s1, *it);
    s1 = *it;
  }
  segment(s1, hi);
  return total;
}

double MollifiedPsi::operator()(double z) const {
  return smoothed(z) - (ramp_a_ + ramp_b_ * z);
}

double MollifiedPsi::sup() const { return sup_value_; }

MollifiedPsi mollify_psi(const ModulusFunction& psi, int k) {
  if (k < 1) throw DomainError("mollify_psi needs k >= 1");
  const double half = psi.half_period;
  const double sup_psi = psi.sup();
  if (!(sup_psi > 0)) throw DomainError("mollify_psi needs sup psi > 0");
  const double S = 4.0 * (k + 1) * sup_psi / (2.0 * half);

  MollifiedPsi out;
  out.half_period_ = half;

  // clamp to min(psi, S z, S (L/2 - z)) on a fine node set with the exact
  // tent crossings included
  const int fine = 2048;
  std::vector<double> zs;
  zs.reserve(fine + 8);
  zs.push_back(0.0);
  // left crossing: largest z with psi(z) > S z (psi(z)/z is nonincreasing)
  {
    double lo = 0.0, hi = half;
    for (int i = 0; i < 100; ++i) {
      double m = 0.5 * (lo + hi);
      (psi.eval(m) - S * m > 0 ? lo : hi) = m;
    }
    if (lo > 0) zs.push_back(0.5 * (lo + hi));
  }
  {
    double lo = 0.0, hi = half;  // right crossing of S (L/2 - z)
    for (int i = 0; i < 100; ++i) {
      double m = 0.5 * (lo + hi);
      (psi.eval(m) - S * (half - m) > 0 ? hi : lo) = m;
    }
    if (hi < half) zs.push_back(0.5 * (lo + hi));
  }
  for (int i = 1; i < fine; ++i) zs.push_back(half * i / fine);
  if (psi.form == ModulusFunction::Form::PiecewiseLinear)
    for (const auto& e : psi.samples)
      if (e.first > 0 && e.first < half) zs.push_back(e.first);
  zs.push_back(half);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end(),
                       [&](double a, double b) { return b - a < 1e-15 * half; }),
           zs.end());

  out.node_z_ = zs;
  out.node_v_.resize(zs.size());
  for (size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    out.node_v_[i] = std::min({psi.eval(z), S * z, S * (half - z)});
  }
  out.node_v_.front() = 0.0;
  out.node_v_.back() = 0.0;
  out.slope_left_ = (out.node_v_[1] - out.node_v_[0]) / (out.node_z_[1] - out.node_z_[0]);
  const size_t nn = zs.size();
  out.slope_right_ =
      (out.node_v_[nn - 1] - out.node_v_[nn - 2]) / (out.node_z_[nn - 1] - out.node_z_[nn - 2]);

  const double scale = std::max(1.0, sup_psi);
  const double slack = 1e-12 * scale;
  const int check_points = 4096;
  double width = (2.0 * half) / (8.0 * k);

  for (int attempt = 0; attempt < 48; ++attempt) {
    out.width_ = width;
    out.ramp_a_ = out.ramp_b_ = 0.0;
    const double v0 = out.smoothed(0.0);
    const double v1 = out.smoothed(half);
    out.ramp_a_ = v0;
    out.ramp_b_ = (v1 - v0) / half;

    SandwichReport rep;
    rep.kernel_width = width;
    rep.shrink_steps = attempt;
    rep.worst_lower = -kInf;
    rep.worst_upper = -kInf;
    double sup_val = 0.0;
    const double shrink = static_cast<double>(k) / (k + 1);
    for (int i = 0; i <= check_points; ++i) {
      const double z = half * i / check_points;
      const double pk = out(z);
      sup_val = std::max(sup_val, pk);
      rep.worst_lower = std::max(rep.worst_lower, pk - psi.eval(z));
      const double scaled = (1.0 + 1.0 / k) * out(half / 2.0 + shrink * (z - half / 2.0));
      rep.worst_upper = std::max(rep.worst_upper, psi.eval(z) - scaled);
    }
    rep.ok = rep.worst_lower <= slack && rep.worst_upper <= slack;
    out.report_ = rep;
    out.sup_value_ = sup_val;
    if (rep.ok) return out;
    width *= 0.5;
  }
  throw SandwichFailure("mollify_psi: sandwich not satisfied after kernel shrinking");
}

PeriodicField odd_periodic_extension(const std::vector<double>& v, double half_length) {
  if (v.size() < 3) throw DomainError("odd_periodic_extension needs >= 3 samples");
  const int m = static_cast<int>(v.size()) - 1;
  double mag = 0.0;
  for (double x : v) mag = std::max(mag, std::abs(x));
  const double tol = 1e-12 * std::max(1.0, mag);
  if (std::abs(v.front()) > tol || std::abs(v.back()) > tol)
    throw BoundaryNonzero("odd_periodic_extension: v(0) and v(L/2) must vanish");
  PeriodicField u;
  u.period = 2.0 * half_length;
  u.values.resize(2 * m);
  for (int i = 0; i <= m; ++i) u.values[i] = v[i];
  for (int j = 1; j < m; ++j) u.values[m + j] = -v[m - j];
  return u;
}

}  // namespace modcont
