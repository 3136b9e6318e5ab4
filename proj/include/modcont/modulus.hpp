#pragma once

#include <string>
#include <utility>
#include <vector>

#include "modcont/types.hpp"

namespace modcont {

// Concave positive modulus of continuity psi on (0, L/2).  Evaluation extends
// psi continuously to the closed interval (piecewise-linear tables clamp to
// their end samples).
struct ModulusFunction {
  enum class Form { Constant, Hoelder, PiecewiseLinear };

  double half_period = 1.0;  // L/2
  Form form = Form::Constant;
  double M = 1.0;            // Constant
  double K = 1.0;            // Hoelder
  double beta = 1.0;         // Hoelder, in (0, 1]
  std::vector<std::pair<double, double>> samples;  // PiecewiseLinear, z in [0, L/2]

  double period() const { return 2.0 * half_period; }
  double eval(double z) const;
  double sup() const;

  static ModulusFunction constant(double M, double L);
  static ModulusFunction hoelder(double K, double beta, double L);
  static ModulusFunction piecewise(std::vector<std::pair<double, double>> samples, double L);

  // CLI spec strings: const:M=1, hoelder:K=1,beta=0.5, pl:<path.csv>.
  static ModulusFunction parse(const std::string& spec, double L);
  std::string describe() const;
};

// L-periodic grid function, values at x_i = i L / N.
struct PeriodicField {
  double period = 1.0;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double h() const { return period / size(); }
  double at(int i) const {
    int n = size();
    int j = i % n;
    if (j < 0) j += n;
    return values[j];
  }
  double osc() const;
};

// b(z) = sup { psi(x) - x z : 0 <= x <= L/2 }.
double legendre_b(const ModulusFunction& psi, double z);

// b~(z) = b(z) + L z / 2.
double legendre_b_tilde(const ModulusFunction& psi, double z);

struct ModulusCheckReport {
  bool holds = false;
  double worst_violation = 0.0;  // max excess over both inequalities (<= 0 comfortable)
  std::pair<double, double> witness{0.0, 0.0};
};

// Verifies -2 psi((L+x-y)/2) <= u(y)-u(x) <= 2 psi((y-x)/2) over all ordered
// grid pairs.  Violations below 1e-9 * osc(u) count as holding.
ModulusCheckReport check_modulus(const PeriodicField& u, const ModulusFunction& psi);

struct SandwichReport {
  bool ok = false;
  double worst_lower = 0.0;   // max psi_k - psi   (<= 0 required)
  double worst_upper = 0.0;   // max psi - scaled  (<= 0 required)
  double kernel_width = 0.0;
  int shrink_steps = 0;
};

// Smooth concave approximant psi_k with psi_k(0) = psi_k(L/2) = 0 and
// psi_k(z) <= psi(z) <= ((1+k)/k) psi_k(L/4 + k/(1+k) (z - L/4)).
class MollifiedPsi {
 public:
  double operator()(double z) const;
  double half_period() const { return half_period_; }
  double sup() const;
  const SandwichReport& report() const { return report_; }

 private:
  friend MollifiedPsi mollify_psi(const ModulusFunction& psi, int k);
  std::vector<double> node_z_;
  std::vector<double> node_v_;
  double slope_left_ = 0.0, slope_right_ = 0.0;
  double width_ = 0.0;  // kernel half-width
  double half_period_ = 1.0;
  double ramp_a_ = 0.0, ramp_b_ = 0.0;  // subtracted to pin exact zero ends
  double sup_value_ = 0.0;
  SandwichReport report_;
  double hat(double z) const;      // clamped concave interpolant before smoothing
  double smoothed(double z) const; // convolution before the ramp correction
};

MollifiedPsi mollify_psi(const ModulusFunction& psi, int k);

// Extends samples of v on [0, L/2] (v(0) = v(L/2) = 0) to an odd L-periodic
// field: u(x) = v(x) on [0, L/2], u(x) = -v(-x) on [-L/2, 0].
PeriodicField odd_periodic_extension(const std::vector<double>& v, double half_length);

}  // namespace modcont
