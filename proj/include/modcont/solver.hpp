#pragma once

#include <functional>
#include <vector>

#include "modcont/coefficient.hpp"
#include "modcont/errors.hpp"

namespace modcont {

struct Grid {
  double x0 = 0.0;
  double x1 = 1.0;
  int n = 256;          // intervals
  bool periodic = true;

  double length() const { return x1 - x0; }
  double h() const { return length() / n; }
  int num_values() const { return periodic ? n : n + 1; }
  double x(int i) const { return x0 + i * h(); }
  bool matches(const Grid& o) const;
};

enum class Scheme { ExplicitCFL, ImplicitEuler };

struct SolverConfig {
  double horizon = 1.0;  // T
  Scheme scheme = Scheme::ExplicitCFL;
  double cfl_safety = 0.45;
  std::vector<double> output_times;  // subset of [0, T]; {0, T} if empty
  bool dirichlet = false;
  std::function<double(double)> left_bc;   // Dirichlet values; nullptr = 0
  std::function<double(double)> right_bc;
  double diffusivity_cap = 1e6;
  double implicit_tol = 1e-10;
};

struct Trajectory {
  Grid grid;
  std::vector<double> times;
  std::vector<std::vector<double>> fields;
  SolverConfig config;
  bool diffusivity_capped = false;

  int time_index(double t) const;  // throws TimeNotSampled
  const std::vector<double>& field_at(double t) const;
  // bilinear interpolation in (t, x); x clamped to the grid
  double value_at(double t, double x) const;
};

// Thrown when the field leaves the representable range; carries whatever was
// integrated up to that point.
struct SolverBlowUp : BlowUpError {
  Trajectory partial;
  SolverBlowUp(const std::string& what, double t) : BlowUpError(what, t) {}
};

// alpha~(x, t, u, p) with a declared gradient-only floor alpha(p); the solver
// spot-checks the floor and throws CoefficientFloorViolated on failure.
struct GeneralCoefficient {
  std::function<double(double x, double t, double u, double p)> evaluator;
  Coefficient floor;
};

Trajectory solve(const Coefficient& coeff, const std::vector<double>& u0,
                 const Grid& grid, const SolverConfig& config);
Trajectory solve(const GeneralCoefficient& coeff, const std::vector<double>& u0,
                 const Grid& grid, const SolverConfig& config);

struct ComparisonReport {
  bool ordered = false;
  double worst_gap = 0.0;  // max over samples of u1 - u2 (<= tol when ordered)
};

// traj1 <= traj2 + 1e-6 * osc at every shared sample.
ComparisonReport comparison_check(const Trajectory& traj1, const Trajectory& traj2);

// u' at a sampled time: centered differences inside, one-sided second order
// at Dirichlet boundaries.
std::vector<double> spatial_derivative(const Trajectory& traj, double t);

}  // namespace modcont
