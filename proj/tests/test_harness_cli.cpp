#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "modcont/cli.hpp"
#include "modcont/csv.hpp"
#include "modcont/errors.hpp"
#include "modcont/estimates.hpp"
#include "modcont/harness.hpp"
#include "oracles.hpp"

using namespace modcont;

namespace {

Grid periodic_grid(double L, int n) {
  Grid g;
  g.periodic = true;
  g.x0 = 0.0;
  g.x1 = L;
  g.n = n;
  return g;
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

}  // namespace

TEST_SUITE_BEGIN("harness_cli");

TEST_CASE("two-point check trivially passes for constant data") {
  const double L = 2.0;
  Grid g = periodic_grid(L, 64);
  Trajectory u;
  u.grid = g;
  u.times = {0.0, 0.1};
  u.fields = {std::vector<double>(g.n, 1.0), std::vector<double>(g.n, 1.0)};
  Grid hg;
  hg.periodic = false;
  hg.x0 = 0.0;
  hg.x1 = L / 2;
  hg.n = 32;
  Trajectory phi;
  phi.grid = hg;
  phi.times = {0.0, 0.1};
  phi.fields = {std::vector<double>(hg.num_values(), 0.5),
                std::vector<double>(hg.num_values(), 0.5)};
  auto rep = two_point_check(u, phi);
  CHECK(rep.pass);
  CHECK(rep.max_Z < 0);
}

TEST_CASE("odd extension of v_k attains equality in the two-point bound") {
  const double L = 2.0;
  const int k = 16, n = 256;
  auto psi = ModulusFunction::constant(1.0, L);
  Grid hg;
  hg.periodic = false;
  hg.x0 = 0.0;
  hg.x1 = L / 2;
  hg.n = n;
  SolverConfig config;
  config.horizon = 0.02;
  config.output_times = {0.0, 0.01, 0.02};
  SupersolutionBracket bracket =
      minimal_supersolution(Coefficient::heat(), psi, k, hg, config);

  MollifiedPsi psi_k = mollify_psi(psi, k);
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = psi_k(hg.x(i));
  v.front() = v.back() = 0.0;
  PeriodicField u0 = odd_periodic_extension(v, L / 2);
  Grid g = periodic_grid(L, 2 * n);
  Trajectory u = solve(Coefficient::heat(), u0.values, g, config);

  // phi = v_k itself: equality at y = -x up to grid error
  Trajectory vk;
  vk.grid = hg;
  vk.times = u.times;
  for (double t : u.times) vk.fields.push_back(bracket.lower.field_at(t));
  auto rep = two_point_check(u, vk);
  CHECK(std::abs(rep.max_Z) <= 2e-5 * u0.osc());
  const double wrap = std::fmod(rep.witness_x + rep.witness_y, L);
  CHECK(std::min(wrap, L - wrap) <= 4 * g.h());
}

TEST_CASE("random data passes the two-point check against its own bracket") {
  const double L = 2.0;
  const int n = 128;
  Grid g = periodic_grid(L, n);
  for (std::uint64_t seed : {1u, 2u}) {
    std::vector<double> u0 = random_lipschitz_field(n, L, seed);
    PeriodicField f{L, u0};
    ModulusFunction psi = measured_concave_modulus(f);
    CHECK(check_modulus(f, psi).holds);

    SolverConfig config;
    config.horizon = 0.02;
    config.output_times = {0.0, 0.005, 0.01, 0.02};
    Trajectory u = solve(Coefficient::curve_shortening(), u0, g, config);
    Grid hg;
    hg.periodic = false;
    hg.x0 = 0.0;
    hg.x1 = L / 2;
    hg.n = n;
    auto bracket =
        minimal_supersolution(Coefficient::curve_shortening(), psi, 16, hg, config);
    Trajectory phi;
    phi.grid = hg;
    phi.times = u.times;
    for (double t : u.times) phi.fields.push_back(bracket.upper.field_at(t));
    CHECK(two_point_check(u, phi).pass);
  }
}

TEST_CASE("sharpness ratio stays below one and grows with k") {
  const double L = 2.0;
  auto psi = ModulusFunction::constant(1.0, L);
  Grid g;
  g.n = 256;
  SolverConfig config;
  const double z = L / 4, t = 0.01 * L * L;
  config.horizon = t;
  double prev = 0.0;
  for (int k : {8, 16, 32}) {
    auto rep = sharpness_experiment(Coefficient::heat(), psi, k, z, t, g, config);
    CHECK(rep.ratio <= 1.0 + 1e-6);
    CHECK(rep.ratio > prev);
    prev = rep.ratio;
  }
  CHECK(prev > 0.9);

  // at t = 0 the ratio is the initial-comparison inequality itself
  SolverConfig zero;
  zero.horizon = 0.0;
  auto rep0 = sharpness_experiment(Coefficient::heat(), psi, 8, z, 0.0, g, zero);
  CHECK(rep0.ratio <= 1.0 + 1e-9);
}

TEST_CASE("measured modulus is concave and tight") {
  const double L = 2.0;
  const int n = 64;
  std::vector<double> u0 = random_lipschitz_field(n, L, 7);
  PeriodicField f{L, u0};
  ModulusFunction psi = measured_concave_modulus(f);
  // tightness: some pair attains the hull value
  double worst = -kInf;
  for (int d = 1; d < n; ++d) {
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(f.at(i + d) - f.at(i)) -
                                  2 * psi.eval(0.5 * d * f.h()));
    }
  }
  CHECK(worst <= 1e-12);
  CHECK(worst >= -1e-9 * f.osc());  // the hull touches the data somewhere
}

TEST_CASE("cli: classify emits the dichotomy verdict") {
  std::string out;
  CHECK(cli({"classify", "--coeff", "csf", "--json"}, &out) == 0);
  CHECK(out.find("\"bounded_above\":\"yes\"") != std::string::npos);
  CHECK(out.find("\"bounded_below\":\"yes\"") != std::string::npos);
  CHECK(cli({"classify", "--coeff", "hom:gamma=2.5", "--json"}, &out) == 0);
  CHECK(out.find("\"bounded_above\":\"no\"") != std::string::npos);
}

TEST_CASE("cli: bound reproduces the heat value") {
  std::string out;
  CHECK(cli({"bound", "--coeff", "heat", "--psi", "const:M=1", "--t", "0.25",
             "--side", "upper", "--json"},
            &out) == 0);
  const auto pos = out.find("\"bound\":");
  REQUIRE(pos != std::string::npos);
  const double v = std::stod(out.substr(pos + 8));
  CHECK(v == doctest::Approx(2.828427).epsilon(1e-6));
}

TEST_CASE("cli: solve round-trips a csv and rejects malformed input") {
  const std::string init = "/tmp/modcont_init.csv";
  const std::string out_csv = "/tmp/modcont_out.csv";
  {
    std::ofstream f(init);
    f << "x,u\n";
    const int n = 64;
    for (int i = 0; i < n; ++i)
      f << format_double(2.0 * i / n) << "," << format_double(std::sin(M_PI * i * 2 / n))
        << "\n";
  }
  CHECK(cli({"solve", "--coeff", "heat", "--init", init, "--bc", "periodic", "--T",
             "0.01", "--out", out_csv}) == 0);
  CsvTable table = read_csv(out_csv);
  CHECK(table.header.size() == 3);
  CHECK(table.rows.size() >= 64);

  const std::string bad = "/tmp/modcont_bad.csv";
  {
    std::ofstream f(bad);
    f << "x,u\n0.0,zero\n0.1,nonsense\n";
  }
  CHECK(cli({"solve", "--coeff", "heat", "--init", bad, "--bc", "periodic", "--T",
             "0.01", "--out", out_csv}) == 2);
  CHECK(cli({"solve", "--coeff", "heat"}) == 2);  // missing required flags
  std::remove(init.c_str());
  std::remove(bad.c_str());
  std::remove(out_csv.c_str());
}

TEST_CASE("cli: translator and supersolution write csv tables") {
  const std::string path = "/tmp/modcont_translator.csv";
  CHECK(cli({"translator", "--coeff", "csf", "--speed", "1", "--prange", "-3:3",
             "--out", path}) == 0);
  CsvTable tr = read_csv(path);
  CHECK(tr.header == std::vector<std::string>{"p", "x", "v"});
  CHECK(tr.rows.size() == 201);
  std::remove(path.c_str());

  const std::string sp = "/tmp/modcont_super.csv";
  CHECK(cli({"supersolution", "--coeff", "heat", "--psi", "const:M=1", "--L", "2",
             "--k", "8", "--T", "0.02", "--N", "64", "--out", sp}) == 0);
  CsvTable sup = read_csv(sp);
  CHECK(sup.header == std::vector<std::string>{"t", "z", "lower", "upper"});
  for (const auto& row : sup.rows) CHECK(row[2] <= row[3] + 1e-9);
  std::remove(sp.c_str());
}

TEST_CASE("cli: verify-modulus distinguishes pass from failure") {
  const std::string path = "/tmp/modcont_field.csv";
  {
    std::ofstream f(path);
    f << "x,u\n";
    const int n = 64;
    for (int i = 0; i < n; ++i)
      f << format_double(2.0 * i / n) << ","
        << format_double(0.3 * std::sin(M_PI * i * 2 / n)) << "\n";
  }
  CHECK(cli({"verify-modulus", "--field", path, "--psi", "const:M=1"}) == 0);
  CHECK(cli({"verify-modulus", "--field", path, "--psi", "const:M=0.01"}) == 1);
  std::remove(path.c_str());
}

TEST_CASE("cli: numeric failures exit with status 3") {
  // initial data beyond the blow-up guard aborts the solve numerically
  const std::string path = "/tmp/modcont_blowup.csv";
  {
    std::ofstream f(path);
    f << "x,u\n";
    for (int i = 0; i < 8; ++i)
      f << format_double(i / 8.0) << "," << format_double(5e12) << "\n";
  }
  CHECK(cli({"solve", "--coeff", "heat", "--init", path, "--bc", "periodic", "--T",
             "0.01", "--out", "/tmp/modcont_blowup_out.csv"}) == 3);
  std::remove(path.c_str());
  std::remove("/tmp/modcont_blowup_out.csv");
  // a nonsensical time is a usage-level input error
  CHECK(cli({"bound", "--coeff", "heat", "--psi", "const:M=1", "--t", "-1"}) == 2);
}

TEST_CASE("cli: examples emits the section tables") {
  std::string out;
  CHECK(cli({"examples", "--json", "--jobs", "2"}, &out) == 0);
  CHECK(out.find("heat_constant") != std::string::npos);
  CHECK(out.find("dichotomy") != std::string::npos);
  CHECK(out.find("hoelder_scaling") != std::string::npos);
}

TEST_SUITE_END();
