#include "modcont/cli.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <CLI11.hpp>
#include <json.hpp>

#include "modcont/csv.hpp"
#include "modcont/errors.hpp"
#include "modcont/estimates.hpp"
#include "modcont/harness.hpp"
#include "modcont/modulus.hpp"
#include "modcont/solver.hpp"
#include "modcont/supersolution.hpp"
#include "modcont/translator.hpp"

namespace modcont {

namespace {

using nlohmann::json;

json json_extended(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  if (std::isnan(v)) return nullptr;
  return v;
}

json json_outcome(Outcome o) { return to_string(o); }

// log-log least squares slope
double fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int cmd_classify(const std::string& coeff_spec, bool as_json, std::ostream& out) {
  Coefficient coeff = Coefficient::parse(coeff_spec);
  LipschitzReport rep = lipschitz_classifier(coeff);
  if (as_json) {
    json j{{"bounded_above", json_outcome(rep.bounded_above)},
           {"bounded_below", json_outcome(rep.bounded_below)}};
    out << j.dump() << "\n";
  } else {
    out << "bounded_above: " << to_string(rep.bounded_above)
        << "\nbounded_below: " << to_string(rep.bounded_below) << "\n";
  }
  return rep.bounded_above == Outcome::Inconclusive ||
                 rep.bounded_below == Outcome::Inconclusive
             ? 1
             : 0;
}

int cmd_translator(const std::string& coeff_spec, double speed,
                   const std::string& prange, double t, int samples,
                   const std::string& out_path) {
  auto colon = prange.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--prange expects a:b");
  const double a = std::stod(prange.substr(0, colon));
  const double b = std::stod(prange.substr(colon + 1));
  Coefficient coeff = Coefficient::parse(coeff_spec);
  TranslatorProfile profile = build_translator(coeff, speed, {0.0, 0.0}, {a, b});
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < samples; ++i) {
    const double p = a + (b - a) * (samples > 1 ? double(i) / (samples - 1) : 0.0);
    rows.push_back({p, profile.x_of_p(p), profile.y_of_p(p, t)});
  }
  write_csv(out_path, {"p", "x", "v"}, rows);
  return 0;
}

int cmd_bound(const std::string& coeff_spec, const std::string& psi_spec, double L,
              double t, const std::string& side, bool as_json, std::ostream& out) {
  Coefficient coeff = Coefficient::parse(coeff_spec);
  ModulusFunction psi = ModulusFunction::parse(psi_spec, L);
  json j{{"coefficient", coeff_spec}, {"psi", psi_spec}, {"L", L}, {"t", t},
         {"tolerances",
          {{"inner_bisection_rel", 1e-9}, {"probe_grid", "z in {0, +-2^j, j=-20..40}"}}}};
  if (side == "upper" || side == "both") {
    SideBound up = gradient_bound_upper(coeff, psi, t);
    j["upper"] = {{"bound", json_extended(up.value)},
                  {"minimizing_z", json_extended(up.minimizing_z)},
                  {"criterion", json_outcome(up.criterion.satisfied)},
                  {"criterion_value", json_extended(up.criterion.value)}};
  }
  if (side == "lower" || side == "both") {
    SideBound lo = gradient_bound_lower(coeff, psi, t);
    j["lower"] = {{"bound", json_extended(lo.value)},
                  {"minimizing_z", json_extended(lo.minimizing_z)},
                  {"criterion", json_outcome(lo.criterion.satisfied)},
                  {"criterion_value", json_extended(lo.criterion.value)}};
  }
  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    if (j.contains("upper")) out << "Z+ = " << j["upper"]["bound"].dump() << "\n";
    if (j.contains("lower")) out << "Z- = " << j["lower"]["bound"].dump() << "\n";
  }
  return 0;
}

int cmd_solve(const std::string& coeff_spec, const std::string& init_path,
              const std::string& bc, double T, int n, const std::string& scheme,
              const std::string& times_arg, const std::string& out_path) {
  Coefficient coeff = Coefficient::parse(coeff_spec);
  CsvTable table = read_csv(init_path);
  if (table.rows.size() < 4 || table.rows.front().size() < 2)
    throw DomainError("init CSV needs columns x,u and >= 4 rows");
  std::vector<double> xs, us;
  for (const auto& row : table.rows) {
    xs.push_back(row[0]);
    us.push_back(row[1]);
  }
  const double h_in = xs[1] - xs[0];
  for (size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i] - xs[0] - i * h_in) > 1e-6 * std::max(1.0, std::abs(xs.back())))
      throw DomainError("init CSV must sample a uniform grid");

  Grid grid;
  SolverConfig config;
  config.horizon = T;
  config.scheme = scheme == "implicit" ? Scheme::ImplicitEuler : Scheme::ExplicitCFL;
  if (bc == "periodic") {
    grid.periodic = true;
    grid.x0 = xs.front();
    grid.x1 = xs.back() + h_in;
  } else if (bc.rfind("dirichlet:", 0) == 0) {
    grid.periodic = false;
    grid.x0 = xs.front();
    grid.x1 = xs.back();
    const double value = std::stod(bc.substr(10));
    config.dirichlet = true;
    config.left_bc = [value](double) { return value; };
    config.right_bc = [value](double) { return value; };
  } else {
    throw CLI::ValidationError("--bc expects periodic or dirichlet:<value>");
  }
  grid.n = n > 0 ? n : static_cast<int>(table.rows.size()) - (grid.periodic ? 0 : 1);

  // resample initial data onto the solver grid
  auto sample = [&](double x) {
    if (x <= xs.front()) return us.front();
    if (x >= xs.back()) return us.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t i = it - xs.begin();
    const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return us[i - 1] + w * (us[i] - us[i - 1]);
  };
  std::vector<double> u0(grid.num_values());
  for (int i = 0; i < grid.num_values(); ++i) {
    double x = grid.x(i);
    if (grid.periodic && i == grid.n) x = grid.x0;
    u0[i] = sample(x);
  }

  if (times_arg.empty()) {
    config.output_times = {0.0, T};
  } else {
    std::stringstream ss(times_arg);
    std::string item;
    while (std::getline(ss, item, ',')) config.output_times.push_back(std::stod(item));
  }

  Trajectory traj = solve(coeff, u0, grid, config);
  std::vector<std::vector<double>> rows;
  for (size_t j = 0; j < traj.times.size(); ++j)
    for (int i = 0; i < grid.num_values(); ++i)
      rows.push_back({traj.times[j], grid.x(i), traj.fields[j][i]});
  write_csv(out_path, {"t", "x", "u"}, rows);
  return 0;
}

int cmd_supersolution(const std::string& coeff_spec, const std::string& psi_spec,
                      double L, int k, double T, int n, const std::string& out_path) {
  Coefficient coeff = Coefficient::parse(coeff_spec);
  ModulusFunction psi = ModulusFunction::parse(psi_spec, L);
  Grid grid;
  grid.periodic = false;
  grid.x0 = 0.0;
  grid.x1 = L / 2.0;
  grid.n = n;
  SolverConfig config;
  config.horizon = T;
  SupersolutionBracket bracket = minimal_supersolution(coeff, psi, k, grid, config);
  std::vector<std::vector<double>> rows;
  for (size_t j = 0; j < bracket.lower.times.size(); ++j)
    for (int i = 0; i < grid.num_values(); ++i)
      rows.push_back({bracket.lower.times[j], grid.x(i), bracket.lower.fields[j][i],
                      bracket.upper.fields[j][i]});
  write_csv(out_path, {"t", "z", "lower", "upper"}, rows);
  return 0;
}

int cmd_verify_modulus(const std::string& field_path, const std::string& psi_spec,
                       double L_arg, bool as_json, std::ostream& out) {
  CsvTable table = read_csv(field_path);
  if (table.rows.size() < 4 || table.rows.front().size() < 2)
    throw DomainError("field CSV needs columns x,u and >= 4 rows");
  PeriodicField field;
  const double h = table.rows[1][0] - table.rows[0][0];
  field.period = L_arg > 0 ? L_arg : h * table.rows.size();
  for (const auto& row : table.rows) field.values.push_back(row[1]);
  ModulusFunction psi = ModulusFunction::parse(psi_spec, field.period);
  ModulusCheckReport rep = check_modulus(field, psi);
  if (as_json) {
    json j{{"holds", rep.holds},
           {"worst_violation", rep.worst_violation},
           {"witness", {rep.witness.first, rep.witness.second}}};
    out << j.dump() << "\n";
  } else {
    out << (rep.holds ? "holds" : "violated")
        << " worst_violation=" << format_double(rep.worst_violation) << "\n";
  }
  return rep.holds ? 0 : 1;
}

int cmd_sharpness(const std::string& coeff_spec, const std::string& psi_spec, double L,
                  int k, double z, double t, int n, bool as_json, std::ostream& out) {
  Coefficient coeff = Coefficient::parse(coeff_spec);
  ModulusFunction psi = ModulusFunction::parse(psi_spec, L);
  Grid grid;
  grid.n = n;
  SolverConfig config;
  config.horizon = t;
  SharpnessReport rep = sharpness_experiment(coeff, psi, k, z, t, grid, config);
  if (as_json) {
    json j{{"k", rep.k},           {"z", rep.z},     {"t", rep.t},
           {"attained", rep.attained}, {"bound", rep.bound}, {"ratio", rep.ratio}};
    out << j.dump() << "\n";
  } else {
    out << "ratio = " << format_double(rep.ratio) << "\n";
  }
  return rep.ratio <= 1.0 + 1e-6 ? 0 : 1;
}

int cmd_examples(bool as_json, int jobs, std::ostream& out) {
  json j;
  j["tolerances"] = {{"bound_rel", 1e-6}, {"exponent_fit", 0.02}};

  // heat-equation bounds for constant moduli: sqrt(2) M / sqrt(t)
  json heat_rows = json::array();
  for (double M : {0.5, 1.0, 2.0}) {
    for (double t : {1e-3, 1e-1, 1.0}) {
      ModulusFunction psi = ModulusFunction::constant(M, 2.0);
      SideBound up = gradient_bound_upper(Coefficient::heat(), psi, t);
      heat_rows.push_back({{"M", M},
                           {"t", t},
                           {"bound", up.value},
                           {"reference", std::sqrt(2.0) * M / std::sqrt(t)}});
    }
  }
  j["heat_constant"] = heat_rows;

  // fitted t-exponents of the bound for Hoelder data
  struct FitCase {
    std::string coeff;
    double beta;
    double expected;
  };
  std::vector<FitCase> cases = {
      {"heat", 0.3, -(1 - 0.3) / 2}, {"heat", 0.5, -(1 - 0.5) / 2},
      {"heat", 0.8, -(1 - 0.8) / 2}, {"hom:gamma=1", 0.5, -0.5 / (2 - 0.5 * 1)},
      {"hom:gamma=1.5", 0.5, -0.5 / (2 - 0.5 * 1.5)},
      {"hom:gamma=3", 0.5, -0.5 / (2 - 0.5 * 3)}};
  auto run_case = [](const FitCase& fc) {
    Coefficient coeff = Coefficient::parse(fc.coeff);
    ModulusFunction psi = ModulusFunction::hoelder(1.0, fc.beta, 2.0);
    std::vector<double> ts, zs;
    for (int i = 0; i <= 12; ++i) {
      const double t = 1e-4 * std::pow(1e3, i / 12.0);
      ts.push_back(t);
      zs.push_back(gradient_bound_upper(coeff, psi, t).value);
    }
    return fit_power_law(ts, zs);
  };
  std::vector<double> fitted(cases.size());
  if (jobs > 1) {
    std::vector<std::future<double>> futures;
    for (const auto& fc : cases)
      futures.push_back(std::async(std::launch::async, run_case, fc));
    for (size_t i = 0; i < cases.size(); ++i) fitted[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < cases.size(); ++i) fitted[i] = run_case(cases[i]);
  }
  json fit_rows = json::array();
  for (size_t i = 0; i < cases.size(); ++i)
    fit_rows.push_back({{"coefficient", cases[i].coeff},
                        {"beta", cases[i].beta},
                        {"fitted_exponent", fitted[i]},
                        {"expected_exponent", cases[i].expected}});
  j["hoelder_scaling"] = fit_rows;

  // Lipschitz dichotomy across the homogeneous scale
  json dichotomy = json::array();
  for (double gamma : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    for (std::string family : {"hom", "asymhom"}) {
      Coefficient coeff =
          Coefficient::parse(family + ":gamma=" + format_double(gamma));
      LipschitzReport rep = lipschitz_classifier(coeff);
      dichotomy.push_back({{"family", family},
                           {"gamma", gamma},
                           {"bounded_above", json_outcome(rep.bounded_above)},
                           {"bounded_below", json_outcome(rep.bounded_below)}});
    }
  }
  j["dichotomy"] = dichotomy;

  if (as_json) {
    out << j.dump(2) << "\n";
  } else {
    for (const auto& row : j["heat_constant"])
      out << "heat const M=" << row["M"] << " t=" << row["t"]
          << " bound=" << row["bound"] << " reference=" << row["reference"] << "\n";
    for (const auto& row : j["hoelder_scaling"])
      out << row["coefficient"].get<std::string>() << " beta=" << row["beta"]
          << " fitted=" << row["fitted_exponent"]
          << " expected=" << row["expected_exponent"] << "\n";
    for (const auto& row : j["dichotomy"])
      out << row["family"].get<std::string>() << " gamma=" << row["gamma"]
          << " above=" << row["bounded_above"].get<std::string>()
          << " below=" << row["bounded_below"].get<std::string>() << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modulus-of-continuity and gradient estimates for u_t = alpha(u')u''"};
  app.require_subcommand(1);

  std::string coeff_spec, psi_spec = "const:M=1", out_path, init_path, field_path;
  std::string prange = "-1:1", bc = "periodic", scheme = "explicit", side = "both";
  std::string times_arg;
  double speed = 1.0, t = 0.1, T = 0.1, L = 2.0, z = 0.5;
  double verify_L = 0.0;
  int k = 16, n = 0, super_n = 256, sharp_n = 256, samples = 201, jobs = 1;
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "Lipschitz dichotomy of a coefficient");
  classify->add_option("--coeff", coeff_spec)->required();
  classify->add_flag("--json", as_json);

  auto* translator = app.add_subcommand("translator", "sample a translating solution");
  translator->add_option("--coeff", coeff_spec)->required();
  translator->add_option("--speed", speed);
  translator->add_option("--prange", prange);
  translator->add_option("--t", t);
  translator->add_option("--samples", samples);
  translator->add_option("--out", out_path)->required();

  auto* bound = app.add_subcommand("bound", "gradient bound for psi_+ at time t");
  bound->add_option("--coeff", coeff_spec)->required();
  bound->add_option("--psi", psi_spec);
  bound->add_option("--t", t)->required();
  bound->add_option("--L", L);
  bound->add_option("--side", side)->check(CLI::IsMember({"upper", "lower", "both"}));
  bound->add_flag("--json", as_json);

  auto* solve_cmd = app.add_subcommand("solve", "integrate u_t = alpha(u')u''");
  solve_cmd->add_option("--coeff", coeff_spec)->required();
  solve_cmd->add_option("--init", init_path)->required();
  solve_cmd->add_option("--bc", bc);
  solve_cmd->add_option("--T", T)->required();
  solve_cmd->add_option("--N", n);
  solve_cmd->add_option("--scheme", scheme)->check(CLI::IsMember({"explicit", "implicit"}));
  solve_cmd->add_option("--times", times_arg);
  solve_cmd->add_option("--out", out_path)->required();

  auto* super = app.add_subcommand("supersolution", "bracket the minimal supersolution");
  super->add_option("--coeff", coeff_spec)->required();
  super->add_option("--psi", psi_spec)->required();
  super->add_option("--L", L)->required();
  super->add_option("--k", k)->required();
  super->add_option("--T", T)->required();
  super->add_option("--N", super_n);
  super->add_option("--out", out_path)->required();

  auto* verify = app.add_subcommand("verify-modulus", "check a modulus against a field");
  verify->add_option("--field", field_path)->required();
  verify->add_option("--psi", psi_spec)->required();
  verify->add_option("--L", verify_L);
  verify->add_flag("--json", as_json);

  auto* sharp = app.add_subcommand("sharpness", "two-point sharpness experiment");
  sharp->add_option("--coeff", coeff_spec)->required();
  sharp->add_option("--psi", psi_spec)->required();
  sharp->add_option("--L", L);
  sharp->add_option("--k", k);
  sharp->add_option("--z", z)->required();
  sharp->add_option("--t", t)->required();
  sharp->add_option("--N", sharp_n);
  sharp->add_flag("--json", as_json);

  auto* examples = app.add_subcommand("examples", "reproduce the worked example tables");
  examples->add_flag("--json", as_json);
  examples->add_option("--jobs", jobs);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(coeff_spec, as_json, out);
    if (translator->parsed())
      return cmd_translator(coeff_spec, speed, prange, t, samples, out_path);
    if (bound->parsed()) return cmd_bound(coeff_spec, psi_spec, L, t, side, as_json, out);
    if (solve_cmd->parsed())
      return cmd_solve(coeff_spec, init_path, bc, T, n, scheme, times_arg, out_path);
    if (super->parsed())
      return cmd_supersolution(coeff_spec, psi_spec, L, k, T, super_n, out_path);
    if (verify->parsed())
      return cmd_verify_modulus(field_path, psi_spec, verify_L, as_json, out);
    if (sharp->parsed())
      return cmd_sharpness(coeff_spec, psi_spec, L, k, z, t, sharp_n, as_json, out);
    if (examples->parsed()) return cmd_examples(as_json, jobs, out);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const BlowUpError& e) {
    err << "numeric error: " << e.what() << " at t = " << e.time << "\n";
    return 3;
  } catch (const QuadratureFailure& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const NonConvergence& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const NoRootError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const NonPositiveDiffusivity& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace modcont
