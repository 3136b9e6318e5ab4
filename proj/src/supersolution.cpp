#include "modcont/supersolution.hpp"

#include <algorithm>
#include <cmath>

#include "modcont/errors.hpp"

namespace modcont {

SupersolutionBracket minimal_supersolution(const Coefficient& coeff,
                                           const ModulusFunction& psi, int k,
                                           const Grid& grid_in, SolverConfig config) {
  if (k < 1) throw DomainError("minimal_supersolution needs k >= 1");
  const double half = psi.half_period;

  Grid grid = grid_in;
  grid.x0 = 0.0;
  grid.x1 = half;
  grid.periodic = false;
  if (grid.n < 8) throw DomainError("minimal_supersolution needs n >= 8");

  MollifiedPsi psi_k = mollify_psi(psi, k);

  // dense sampling so the phi_k interpolation stays below the bracket gap
  std::vector<double> outputs = config.output_times;
  const int dense = 64;
  for (int j = 0; j <= dense; ++j) outputs.push_back(config.horizon * j / dense);
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end(),
                            [&](double a, double b) {
                              return b - a < 1e-12 * std::max(1.0, config.horizon);
                            }),
                outputs.end());
  config.output_times = outputs;
  config.dirichlet = true;
  config.left_bc = [](double) { return 0.0; };
  config.right_bc = [](double) { return 0.0; };

  std::vector<double> u0(grid.num_values());
  for (int i = 0; i < grid.num_values(); ++i) u0[i] = psi_k(grid.x(i));
  u0.front() = 0.0;
  u0.back() = 0.0;

  SupersolutionBracket bracket;
  bracket.k = k;
  bracket.coeff = coeff;
  bracket.sup_psi = psi.sup();
  bracket.lower = solve(coeff, u0, grid, config);

  // phi_k on the same grid and times
  const double shrink = static_cast<double>(k) / (k + 1);
  Trajectory upper;
  upper.grid = grid;
  upper.times = bracket.lower.times;
  upper.fields.resize(upper.times.size());
  for (size_t j = 0; j < upper.times.size(); ++j) {
    const double t = upper.times[j] * shrink * shrink;
    std::vector<double>& field = upper.fields[j];
    field.resize(grid.num_values());
    for (int i = 0; i < grid.num_values(); ++i) {
      const double z = half / 2.0 + shrink * (grid.x(i) - half / 2.0);
      field[i] = (1.0 + 1.0 / k) * bracket.lower.value_at(t, z);
    }
  }
  bracket.upper = std::move(upper);
  return bracket;
}

std::pair<double, double> boundary_gradient(const SupersolutionBracket& bracket, double t) {
  const Grid& grid = bracket.lower.grid;
  const int j = bracket.lower.time_index(t);
  const std::vector<double>& lo = bracket.lower.fields[j];
  const std::vector<double>& up = bracket.upper.fields[j];
  const double h = grid.h();
  const int n = grid.n;
  auto mid = [&](int i) { return 0.5 * (lo[i] + up[i]); };
  const double left = (-3 * mid(0) + 4 * mid(1) - mid(2)) / (2 * h);
  const double right = (3 * mid(n) - 4 * mid(n - 1) + mid(n - 2)) / (2 * h);
  return {left, right};
}

TimeRegularityReport time_regularity_check(const SupersolutionBracket& bracket,
                                           double delta) {
  const Grid& grid = bracket.lower.grid;
  const double half = grid.x1;
  if (delta <= 0 || delta >= half / 2.0)
    throw DomainError("time_regularity_check needs 0 < delta < L/4");
  const double c_delta = std::max(bracket.sup_psi / delta, bracket.sup_psi / (half - delta));
  // sup of alpha over |p| <= C_delta, by scan
  double alpha_delta = 0.0;
  const int scan = 512;
  for (int i = 0; i <= scan; ++i) {
    const double p = -c_delta + 2.0 * c_delta * i / scan;
    if (p == 0.0 && bracket.coeff.singular_at_zero()) {
      alpha_delta = kInf;
      continue;
    }
    alpha_delta = std::max(alpha_delta, eval_alpha(bracket.coeff, p));
  }

  TimeRegularityReport rep;
  rep.worst_ratio = 0.0;
  const auto& times = bracket.lower.times;
  for (size_t j1 = 0; j1 < times.size(); ++j1) {
    for (size_t j2 = j1 + 1; j2 < times.size(); ++j2) {
      const double bound =
          2.0 * c_delta * std::sqrt(alpha_delta * (times[j2] - times[j1])) / std::sqrt(M_PI);
      for (int i = 0; i <= grid.n; ++i) {
        const double z = grid.x(i);
        if (z < delta || z > half - delta) continue;
        const double dv =
            std::abs(bracket.lower.fields[j2][i] - bracket.lower.fields[j1][i]);
        if (bound == 0.0) {
          if (dv > 0) rep.worst_ratio = kInf;
          continue;
        }
        rep.worst_ratio = std::max(rep.worst_ratio, dv / bound);
      }
    }
  }
  rep.pass = rep.worst_ratio <= 1.0;
  return rep;
}

}  // namespace modcont
