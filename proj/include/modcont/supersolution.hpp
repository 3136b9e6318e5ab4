#pragma once

#include <utility>

#include "modcont/modulus.hpp"
#include "modcont/solver.hpp"

namespace modcont {

// Bracketing of the minimal supersolution psi_+ between the Dirichlet-zero
// solution v_k started from the mollified psi_k (lower) and its rescaling
// phi_k (upper).  The midpoint is the estimate, the half-gap its certificate.
struct SupersolutionBracket {
  int k = 1;
  Coefficient coeff;
  double sup_psi = 0.0;
  Trajectory lower;  // v_k on [0, L/2]
  Trajectory upper;  // phi_k sampled on the same grid/times

  double lower_at(double t, double z) const { return lower.value_at(t, z); }
  double upper_at(double t, double z) const { return upper.value_at(t, z); }
  double estimate(double t, double z) const {
    return 0.5 * (lower_at(t, z) + upper_at(t, z));
  }
  double gap(double t, double z) const { return upper_at(t, z) - lower_at(t, z); }
};

// Builds psi_k, runs the Dirichlet-zero solve on [0, L/2], and assembles the
// rescaled upper trajectory phi_k(z, t) = (1+k)/k v_k(L/4 + k/(1+k)(z - L/4),
// (k/(1+k))^2 t) by interpolation.  config.output_times is densified to at
// least 64 samples.
SupersolutionBracket minimal_supersolution(const Coefficient& coeff,
                                           const ModulusFunction& psi, int k,
                                           const Grid& grid, SolverConfig config);

// One-sided slopes of the bracket midpoint at z = 0 and z = L/2; concavity
// makes them bounds for all interior slopes.
std::pair<double, double> boundary_gradient(const SupersolutionBracket& bracket, double t);

struct TimeRegularityReport {
  bool pass = false;
  double worst_ratio = 0.0;  // max |dv| / bound, <= 1 when passing
};

// |v_k(z,t2) - v_k(z,t1)| <= 2 C_delta sqrt(alpha_delta (t2-t1)) / sqrt(pi)
// on [delta, L/2 - delta], with C_delta = max(sup psi/delta, sup psi/(L/2-delta))
// and alpha_delta = sup_{|p| <= C_delta} alpha(p).
TimeRegularityReport time_regularity_check(const SupersolutionBracket& bracket, double delta);

}  // namespace modcont
