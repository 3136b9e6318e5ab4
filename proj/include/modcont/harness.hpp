#pragma once

#include <cstdint>

#include "modcont/modulus.hpp"
#include "modcont/solver.hpp"
#include "modcont/supersolution.hpp"

namespace modcont {

struct TwoPointReport {
  double max_Z = 0.0;
  double witness_x = 0.0, witness_y = 0.0, witness_t = 0.0;
  bool pass = false;
};

// Z(x, y, t) = u(y,t) - u(x,t) - 2 phi((y-x)/2, t) over all ordered grid
// pairs and shared sample times; pass iff max_Z <= 1e-6 osc(u(.,0)).
TwoPointReport two_point_check(const Trajectory& u, const Trajectory& phi);

struct SharpnessReport {
  int k = 0;
  double z = 0.0, t = 0.0;
  double attained = 0.0;  // sup_x |u(x+2z,t) - u(x,t)| from the odd extension
  double bound = 0.0;     // 2 * psi_+ estimate at (z, t)
  double ratio = 0.0;
};

// Odd-extends psi_k, solves periodically, and compares the attained two-point
// difference against the bracketed psi_+ estimate.
SharpnessReport sharpness_experiment(const Coefficient& coeff, const ModulusFunction& psi,
                                     int k, double z, double t, const Grid& grid,
                                     const SolverConfig& config);

// Truncated Fourier series with decaying coefficients; deterministic in seed.
std::vector<double> random_lipschitz_field(int n, double L, std::uint64_t seed,
                                           int modes = 8);

// Least concave majorant of the measured two-point differences of u; a valid
// piecewise-linear modulus of continuity for u.
ModulusFunction measured_concave_modulus(const PeriodicField& u);

// Seed override hook: MODCONT_SEED when set, fallback otherwise.
std::uint64_t default_seed(std::uint64_t fallback);

}  // namespace modcont
