#include "modcont/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "modcont/errors.hpp"

namespace modcont {

TwoPointReport two_point_check(const Trajectory& u, const Trajectory& phi) {
  if (!u.grid.periodic || phi.grid.periodic)
    throw GridMismatch("two_point_check: u must be periodic and phi an interval run");
  const double L = u.grid.length();
  if (std::abs(phi.grid.length() - L / 2.0) > 1e-9 * std::max(1.0, L))
    throw PeriodMismatch("two_point_check: phi must live on [0, L/2]");
  if (u.times.size() != phi.times.size())
    throw GridMismatch("two_point_check: incompatible time samples");
  for (size_t j = 0; j < u.times.size(); ++j)
    if (std::abs(u.times[j] - phi.times[j]) > 1e-9)
      throw GridMismatch("two_point_check: incompatible time samples");

  const int n = u.grid.n;
  const double h = u.grid.h();
  TwoPointReport rep;
  rep.max_Z = -kInf;
  std::vector<double> two_phi(n);
  for (size_t j = 0; j < u.times.size(); ++j) {
    const std::vector<double>& field = u.fields[j];
    const double tj = u.times[j];
    for (int d = 1; d < n; ++d) two_phi[d] = 2.0 * phi.value_at(tj, 0.5 * d * h);
    for (int i = 0; i < n; ++i) {
      const double ui = field[i];
      for (int d = 1; d < n; ++d) {
        const int jdx = i + d < n ? i + d : i + d - n;
        const double Z = field[jdx] - ui - two_phi[d];
        if (Z > rep.max_Z) {
          rep.max_Z = Z;
          rep.witness_x = i * h;
          rep.witness_y = (i + d) * h;
          rep.witness_t = tj;
        }
      }
    }
  }
  auto [mn, mx] = std::minmax_element(u.fields.front().begin(), u.fields.front().end());
  rep.pass = rep.max_Z <= 1e-6 * (*mx - *mn);
  return rep;
}

SharpnessReport sharpness_experiment(const Coefficient& coeff, const ModulusFunction& psi,
                                     int k, double z, double t, const Grid& grid_in,
                                     const SolverConfig& config_in) {
  const double half = psi.half_period;
  if (z <= 0 || z >= half) throw DomainError("sharpness_experiment needs z in (0, L/2)");

  // bracketed psi_+ estimate on the half-domain
  Grid half_grid = grid_in;
  half_grid.periodic = false;
  half_grid.x0 = 0.0;
  half_grid.x1 = half;
  SolverConfig config = config_in;
  if (std::find_if(config.output_times.begin(), config.output_times.end(), [&](double s) {
        return std::abs(s - t) < 1e-12;
      }) == config.output_times.end())
    config.output_times.push_back(t);
  SupersolutionBracket bracket = minimal_supersolution(coeff, psi, k, half_grid, config);

  // odd periodic extension of psi_k, evolved with the periodic solver
  Grid full_grid;
  full_grid.periodic = true;
  full_grid.x0 = 0.0;
  full_grid.x1 = 2.0 * half;
  full_grid.n = 2 * half_grid.n;
  MollifiedPsi psi_k = mollify_psi(psi, k);
  std::vector<double> v(half_grid.n + 1);
  for (int i = 0; i <= half_grid.n; ++i) v[i] = psi_k(half_grid.x(i));
  v.front() = 0.0;
  v.back() = 0.0;
  PeriodicField u0 = odd_periodic_extension(v, half);
  SolverConfig pconfig = config;
  pconfig.dirichlet = false;
  pconfig.left_bc = nullptr;
  pconfig.right_bc = nullptr;
  Trajectory traj = solve(coeff, u0.values, full_grid, pconfig);

  SharpnessReport rep;
  rep.k = k;
  rep.z = z;
  rep.t = t;
  rep.attained = std::abs(traj.value_at(t, z) - traj.value_at(t, -z));
  rep.bound = 2.0 * bracket.estimate(t, z);
  rep.ratio = rep.bound != 0.0 ? rep.attained / rep.bound : kInf;
  return rep;
}

std::vector<double> random_lipschitz_field(int n, double L, std::uint64_t seed, int modes) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.3, 0.6);
  std::vector<double> a(modes + 1, 0.0), b(modes + 1, 0.0);
  // a guaranteed first harmonic keeps the measured modulus positive
  a[1] = unif(rng) * (rng() % 2 ? 1.0 : -1.0);
  b[1] = gauss(rng) * 0.3;
  for (int m = 2; m <= modes; ++m) {
    a[m] = gauss(rng) / (m * m);
    b[m] = gauss(rng) / (m * m);
  }
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    const double x = L * i / n;
    double s = 0.0;
    for (int m = 1; m <= modes; ++m) {
      s += a[m] * std::cos(2 * M_PI * m * x / L) + b[m] * std::sin(2 * M_PI * m * x / L);
    }
    u[i] = s;
  }
  return u;
}

ModulusFunction measured_concave_modulus(const PeriodicField& u) {
  const int n = u.size();
  const double h = u.h();
  // m(d h / 2) = max_i |u(i+d) - u(i)| / 2
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n / 2 + 2);
  pts.emplace_back(0.0, 0.0);
  for (int d = 1; d < n; ++d) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(u.at(i + d) - u.values[i]));
    pts.emplace_back(0.5 * d * h, 0.5 * m);
  }
  // upper concave hull (monotone chain over the sorted abscissae)
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const double cross = (b.first - a.first) * (p.second - a.second) -
                           (p.first - a.first) * (b.second - a.second);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return ModulusFunction::piecewise(std::move(hull), u.period);
}

std::uint64_t default_seed(std::uint64_t fallback) {
  if (const char* env = std::getenv("MODCONT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return fallback;
}

}  // namespace modcont
