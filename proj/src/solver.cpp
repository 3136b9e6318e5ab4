#include "modcont/solver.hpp"

#include <algorithm>
#include <cmath>

#include "modcont/errors.hpp"

namespace modcont {

namespace {

constexpr double kBlowUpMagnitude = 1e12;

double osc_of(const std::vector<double>& v) {
  auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  return *mx - *mn;
}

struct StepContext {
  const Grid& grid;
  const SolverConfig& config;
  std::function<double(int, double, double, double)> diffusivity;  // (i, t, u, p) -> alpha
  bool* capped;
};

void gradients(const Grid& grid, const std::vector<double>& u, std::vector<double>& p,
               std::vector<double>& lap) {
  const int n = grid.n;
  const double h = grid.h();
  if (grid.periodic) {
    for (int i = 0; i < n; ++i) {
      const double up = u[(i + 1) % n];
      const double um = u[(i - 1 + n) % n];
      p[i] = (up - um) / (2 * h);
      lap[i] = (up - 2 * u[i] + um) / (h * h);
    }
  } else {
    for (int i = 1; i < n; ++i) {
      p[i] = (u[i + 1] - u[i - 1]) / (2 * h);
      lap[i] = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
    }
    p[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * h);
    p[n] = (3 * u[n] - 4 * u[n - 1] + u[n - 2]) / (2 * h);
    lap[0] = lap[n] = 0.0;
  }
}

void check_finite(const std::vector<double>& u, double t, const Trajectory& partial) {
  for (double v : u) {
    if (!std::isfinite(v) || std::abs(v) > kBlowUpMagnitude) {
      SolverBlowUp ex("solver: field left the representable range", t);
      ex.partial = partial;
      throw ex;
    }
  }
}

// Tridiagonal solve (Thomas); a = sub, b = diag, c = super, d = rhs.
std::vector<double> thomas(std::vector<double> a, std::vector<double> b,
                           std::vector<double> c, std::vector<double> d) {
  const int n = static_cast<int>(b.size());
  for (int i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

// Cyclic tridiagonal via Sherman-Morrison.
std::vector<double> cyclic_thomas(const std::vector<double>& a, std::vector<double> b,
                                  const std::vector<double>& c, const std::vector<double>& d) {
  const int n = static_cast<int>(b.size());
  const double alpha = a[0];   // coupling u[0] with u[n-1]
  const double beta = c[n - 1];
  const double gamma = -b[0];
  std::vector<double> bb = b;
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;
  std::vector<double> x = thomas(a, bb, c, d);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  std::vector<double> zq = thomas(a, bb, c, u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) /
                      (1.0 + zq[0] + beta * zq[n - 1] / gamma);
  for (int i = 0; i < n; ++i) x[i] -= fact * zq[i];
  return x;
}

Trajectory run(const StepContext& ctx, std::vector<double> u) {
  const Grid& grid = ctx.grid;
  const SolverConfig& config = ctx.config;
  const int n = grid.n;
  const double h = grid.h();
  const double T = config.horizon;

  auto left = config.left_bc ? config.left_bc : [](double) { return 0.0; };
  auto right = config.right_bc ? config.right_bc : [](double) { return 0.0; };

  if (grid.n < 8) throw DomainError("solve: grid needs n >= 8");
  if (static_cast<int>(u.size()) != grid.num_values())
    throw GridMismatch("solve: initial data does not match the grid");
  if (!grid.periodic) {
    const double scale = std::max(1.0, osc_of(u));
    if (std::abs(u.front() - left(0.0)) > 1e-9 * scale ||
        std::abs(u.back() - right(0.0)) > 1e-9 * scale)
      throw std::invalid_argument("solve: u0 does not match Dirichlet data at t = 0");
  }

  std::vector<double> outputs = config.output_times;
  if (outputs.empty()) outputs = {0.0, T};
  std::sort(outputs.begin(), outputs.end());
  for (double t : outputs)
    if (t < -1e-12 || t > T * (1 + 1e-12))
      throw DomainError("solve: output time outside [0, T]");

  Trajectory traj;
  traj.grid = grid;
  traj.config = config;

  size_t next_out = 0;
  auto emit_exact = [&](double t, const std::vector<double>& field) {
    while (next_out < outputs.size() && outputs[next_out] <= t + 1e-15 * std::max(1.0, T)) {
      traj.times.push_back(outputs[next_out]);
      traj.fields.push_back(field);
      ++next_out;
    }
  };
  emit_exact(0.0, u);

  std::vector<double> p(grid.num_values(), 0.0), lap(grid.num_values(), 0.0);
  std::vector<double> d(grid.num_values(), 0.0);
  std::vector<double> u_prev;
  double t = 0.0;
  long step = 0;

  auto record_crossings = [&](double t_old, double t_new, const std::vector<double>& u_old,
                              const std::vector<double>& u_new) {
    while (next_out < outputs.size() && outputs[next_out] <= t_new + 1e-15 * std::max(1.0, T)) {
      const double tau = outputs[next_out];
      const double w = t_new > t_old ? (tau - t_old) / (t_new - t_old) : 1.0;
      std::vector<double> field(u_new.size());
      for (size_t i = 0; i < field.size(); ++i)
        field[i] = (1.0 - w) * u_old[i] + w * u_new[i];
      traj.times.push_back(tau);
      traj.fields.push_back(std::move(field));
      ++next_out;
    }
  };

  const bool implicit = config.scheme == Scheme::ImplicitEuler;
  const double implicit_dt = std::max(config.cfl_safety * h, T / 2e6);
  const double osc0 = std::max(1e-300, osc_of(u));

  while (t < T && next_out < outputs.size()) {
    gradients(grid, u, p, lap);
    double dmax = 0.0;
    const int lo = grid.periodic ? 0 : 1;
    const int hi = grid.periodic ? n - 1 : n - 1;
    for (int i = lo; i <= hi; ++i) {
      double a = ctx.diffusivity(i, t, u[i], p[i]);
      if (a > config.diffusivity_cap) {
        a = config.diffusivity_cap;
        if (ctx.capped) *ctx.capped = true;
      }
      if (!(a > 0)) throw NonPositiveDiffusivity("solve: diffusivity <= 0 on the grid");
      d[i] = a;
      dmax = std::max(dmax, a);
    }

    double dt;
    if (implicit) {
      dt = std::min(implicit_dt, T - t);
    } else {
      dt = config.cfl_safety * h * h / (2.0 * dmax);
      dt = std::min(dt, T - t);
    }
    const double t_new = t + dt;
    u_prev = u;

    if (!implicit) {
      for (int i = lo; i <= hi; ++i) u[i] += dt * d[i] * lap[i];
      if (!grid.periodic) {
        u[0] = left(t_new);
        u[n] = right(t_new);
      }
    } else {
      // damped fixed-point iteration with frozen-coefficient linear solves
      std::vector<double> iter = u;
      double theta = 1.0;
      double prev_delta = kInf;
      bool done = false;
      for (int m = 0; m < 200; ++m) {
        gradients(grid, iter, p, lap);
        for (int i = lo; i <= hi; ++i) {
          double a = ctx.diffusivity(i, t_new, iter[i], p[i]);
          if (a > config.diffusivity_cap) {
            a = config.diffusivity_cap;
            if (ctx.capped) *ctx.capped = true;
          }
          if (!(a > 0)) throw NonPositiveDiffusivity("solve: diffusivity <= 0 on the grid");
          d[i] = a;
        }
        std::vector<double> sol;
        const double r = dt / (h * h);
        if (grid.periodic) {
          std::vector<double> sub(n), diag(n), sup(n), rhs(u_prev);
          for (int i = 0; i < n; ++i) {
            sub[i] = -r * d[i];
            sup[i] = -r * d[i];
            diag[i] = 1.0 + 2.0 * r * d[i];
          }
          sol = cyclic_thomas(sub, diag, sup, rhs);
        } else {
          std::vector<double> sub(n + 1, 0.0), diag(n + 1, 1.0), sup(n + 1, 0.0), rhs(u_prev);
          rhs[0] = left(t_new);
          rhs[n] = right(t_new);
          for (int i = 1; i < n; ++i) {
            sub[i] = -r * d[i];
            sup[i] = -r * d[i];
            diag[i] = 1.0 + 2.0 * r * d[i];
          }
          sol = thomas(sub, diag, sup, rhs);
        }
        double delta = 0.0;
        for (size_t i = 0; i < sol.size(); ++i) {
          const double next = (1.0 - theta) * iter[i] + theta * sol[i];
          delta = std::max(delta, std::abs(next - iter[i]));
          iter[i] = next;
        }
        if (delta <= config.implicit_tol * std::max(1.0, osc0)) {
          done = true;
          break;
        }
        if (delta > prev_delta && theta > 1.0 / 256) theta *= 0.5;
        prev_delta = delta;
      }
      if (!done) throw NonConvergence("solve: implicit iteration stalled");
      u = std::move(iter);
    }

    check_finite(u, t_new, traj);
    record_crossings(t, t_new, u_prev, u);
    t = t_new;
    ++step;
    if (step > 500'000'000L) throw NonConvergence("solve: step budget exhausted");
  }
  return traj;
}

}  // namespace

bool Grid::matches(const Grid& o) const {
  return periodic == o.periodic && n == o.n && std::abs(x0 - o.x0) < 1e-12 &&
         std::abs(x1 - o.x1) < 1e-12;
}

int Trajectory::time_index(double t) const {
  for (size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return static_cast<int>(i);
  throw TimeNotSampled("trajectory does not sample t = " + std::to_string(t));
}

const std::vector<double>& Trajectory::field_at(double t) const {
  return fields[time_index(t)];
}

double Trajectory::value_at(double t, double x) const {
  if (times.empty()) throw TimeNotSampled("empty trajectory");
  auto it = std::lower_bound(times.begin(), times.end(), t);
  size_t j1 = std::min<size_t>(times.size() - 1, it - times.begin());
  size_t j0 = j1 > 0 ? j1 - 1 : 0;
  double w = 0.0;
  if (j1 > j0 && times[j1] > times[j0]) {
    w = std::clamp((t - times[j0]) / (times[j1] - times[j0]), 0.0, 1.0);
  } else if (j1 == j0) {
    w = 1.0;
  }
  auto interp_x = [&](const std::vector<double>& f) {
    double xi = x;
    if (grid.periodic) {
      xi = std::fmod(x - grid.x0, grid.length());
      if (xi < 0) xi += grid.length();
      xi += grid.x0;
    } else {
      xi = std::clamp(x, grid.x0, grid.x1);
    }
    const double s = (xi - grid.x0) / grid.h();
    const int i0 = std::min(static_cast<int>(std::floor(s)),
                            grid.periodic ? grid.n - 1 : grid.n - 1);
    const double frac = s - i0;
    const double f0 = f[i0];
    const double f1 = grid.periodic ? f[(i0 + 1) % grid.n] : f[i0 + 1];
    return f0 + frac * (f1 - f0);
  };
  const double v1 = interp_x(fields[j1]);
  if (w >= 1.0) return v1;
  const double v0 = interp_x(fields[j0]);
  return (1.0 - w) * v0 + w * v1;
}

Trajectory solve(const Coefficient& coeff, const std::vector<double>& u0,
                 const Grid& grid, const SolverConfig& config) {
  bool capped = false;
  StepContext ctx{grid, config,
                  [&](int, double, double, double p) {
                    // the homogeneous family blows up at zero slope; the cap
                    // takes over and the event is flagged on the trajectory
                    if (coeff.singular_at_zero() && p == 0.0) {
                      capped = true;
                      return config.diffusivity_cap;
                    }
                    return eval_alpha(coeff, p);
                  },
                  &capped};
  Trajectory traj = run(ctx, u0);
  traj.diffusivity_capped = capped;
  return traj;
}

Trajectory solve(const GeneralCoefficient& coeff, const std::vector<double>& u0,
                 const Grid& grid, const SolverConfig& config) {
  bool capped = false;
  long calls = 0;
  StepContext ctx{grid, config,
                  [&](int i, double t, double u, double p) {
                    const double a = coeff.evaluator(grid.x(i), t, u, p);
                    // periodic spot-check of the declared floor
                    if (calls++ % 64 == 0) {
                      const double fl = eval_alpha(coeff.floor, p);
                      if (a < fl * (1.0 - 1e-9))
                        throw CoefficientFloorViolated(
                            "general coefficient dips below its declared floor");
                    }
                    return a;
                  },
                  &capped};
  Trajectory traj = run(ctx, u0);
  traj.diffusivity_capped = capped;
  return traj;
}

ComparisonReport comparison_check(const Trajectory& traj1, const Trajectory& traj2) {
  if (!traj1.grid.matches(traj2.grid) || traj1.times.size() != traj2.times.size())
    throw GridMismatch("comparison_check: trajectories differ in grid or sampling");
  for (size_t j = 0; j < traj1.times.size(); ++j)
    if (std::abs(traj1.times[j] - traj2.times[j]) > 1e-9)
      throw GridMismatch("comparison_check: sampled times differ");
  double osc = std::max(osc_of(traj1.fields.front()), osc_of(traj2.fields.front()));
  double worst = -kInf;
  for (size_t j = 0; j < traj1.times.size(); ++j)
    for (size_t i = 0; i < traj1.fields[j].size(); ++i)
      worst = std::max(worst, traj1.fields[j][i] - traj2.fields[j][i]);
  ComparisonReport rep;
  rep.worst_gap = worst;
  rep.ordered = worst <= 1e-6 * std::max(osc, 1e-300);
  return rep;
}

std::vector<double> spatial_derivative(const Trajectory& traj, double t) {
  const std::vector<double>& u = traj.field_at(t);
  const Grid& grid = traj.grid;
  const int n = grid.n;
  const double h = grid.h();
  std::vector<double> p(u.size());
  if (grid.periodic) {
    for (int i = 0; i < n; ++i)
      p[i] = (u[(i + 1) % n] - u[(i - 1 + n) % n]) / (2 * h);
  } else {
    for (int i = 1; i < n; ++i) p[i] = (u[i + 1] - u[i - 1]) / (2 * h);
    p[0] = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * h);
    p[n] = (3 * u[n] - 4 * u[n - 1] + u[n - 2]) / (2 * h);
  }
  return p;
}

}  // namespace modcont
