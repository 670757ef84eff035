#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "fluct/cli/config.hpp"
#include "fluct/cli/curve.hpp"
#include "fluct/cli/runner.hpp"
#include "fluct/errors.hpp"

using namespace fluct::cli;
namespace fs = std::filesystem;

namespace {

const char* kJanus = R"(# minimal Janus scenario
[geometry]
kind = janus
radius = 100 nm   # ball radius
a_on_top = true

[material.A]
preset = dielectric:1

[material.B]
kind = drude
plasma_freq = 9 eV
damping = 35 meV

[thermal]
environment = 300 K
body = 600 K
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fluct_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string body_of(const fs::path& p) {
  std::ifstream in(p);
  return curve_body(read_curve(in).curve);
}

ConfigError parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a ConfigError for:\n" << text;
  return ConfigError("", 0, 0);
}

}  // namespace

TEST(Config, MinimalJanusRoundTrips) {
  const auto cfg = parse_config(kJanus);
  EXPECT_EQ(cfg.text("geometry", "kind", ""), "janus");
  EXPECT_TRUE(cfg.boolean("geometry", "a_on_top", false));
  EXPECT_NEAR(cfg.quantity("material.B", "damping", 0.0), 0.035, 1e-15);
  const std::string s = cfg.serialize();
  const auto again = parse_config(s);
  EXPECT_EQ(again.serialize(), s);
  EXPECT_TRUE(again == cfg);
  EXPECT_EQ(again.hash(), cfg.hash());
}

TEST(Config, MisspelledKeyNamesTheNearestValidKey) {
  const auto e = parse_error("[geometry]\nkind = janus\nradiuss = 100 nm\n");
  EXPECT_NE(std::string(e.what()).find("radiuss"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("'radius'"), std::string::npos);
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 1);
  EXPECT_EQ(e.section(), "geometry");
}

TEST(Config, TemperatureWithoutUnit) {
  const auto e = parse_error("[thermal]\nenvironment = 300\n");
  EXPECT_NE(std::string(e.what()).find("unit required"), std::string::npos);
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 15);
  EXPECT_EQ(e.key(), "environment");
}

TEST(Config, TypeMismatchesAndOtherErrors) {
  EXPECT_NE(std::string(parse_error("[quadrature]\nmc_samples = lots\n").what()).find("integer"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[quadrature]\nrel_tol = 1e-6 K\n").what()).find("dimensionless"),
            std::string::npos);
  EXPECT_NE(std::string(parse_error("[geometry]\nradius = 1 kg\n").what()).find("unknown unit"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[geometry]\na_on_top = yes\n").what()).find("true or false"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[geometry]\nkind = januss\n").what()).find("'janus'"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[geometri]\n").what()).find("[geometry]"), std::string::npos);
  EXPECT_NE(std::string(parse_error("radius = 1 nm\n").what()).find("outside"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[thermal]\nbody = 1 K\nbody = 2 K\n").what()).find("duplicate"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[thermal]\nbody 300 K\n").what()).find("key = value"), std::string::npos);
  EXPECT_NE(std::string(parse_error("[ness]\nexponents = 1, x\n").what()).find("integers"), std::string::npos);
}

TEST(Config, SweepBoundsTakeTheVariableUnit) {
  EXPECT_NO_THROW(parse_config("[sweep]\nvariable = body_temperature\nfrom = 0 K\nto = 900 K\n"));
  EXPECT_NE(std::string(parse_error("[sweep]\nvariable = body_temperature\nfrom = 0\n").what()).find("unit required"),
            std::string::npos);
  EXPECT_NE(std::string(parse_error("[sweep]\nvariable = omega_a\nfrom = 1 K\n").what()).find("dimensionless"),
            std::string::npos);
  EXPECT_NO_THROW(parse_config("[sweep]\nvariable = omega_a\nfrom = 0.01\nto = 1000\nspacing = log\n"));
}

TEST(Config, NearestUsesEditDistance) {
  EXPECT_EQ(nearest("radiuss", {"radius", "a_on_top", "kind"}), "radius");
  EXPECT_EQ(nearest("dampnig", {"plasma_freq", "damping"}), "damping");
}

TEST(Curve, WriteReadRoundTrip) {
  ScalarCurve c;
  c.abscissa = {"body_temperature", "K"};
  c.value = {"force_z", "N"};
  c.has_error = true;
  c.push(0.0, -1.25e-22, 3e-30);
  c.push(300.0, 0.0, 0.0);
  c.push(1.0 / 3.0 * 1000.0, 0.1 + 0.2, 1e-300);
  c.metadata.emplace_back("drive", "closed");
  CurveHeader h{"1.2.3", 0xdeadbeefcafef00dULL, 42, "2026-01-01T00:00:00Z", "[thermal]\nbody = 600 K\n\n[sweep]\n"};
  std::stringstream ss;
  write_curve(ss, c, h);
  const auto p = read_curve(ss);
  EXPECT_EQ(p.curve.x, c.x);
  EXPECT_EQ(p.curve.y, c.y);
  EXPECT_EQ(p.curve.err, c.err);
  EXPECT_EQ(p.curve.abscissa.unit, "K");
  EXPECT_EQ(p.curve.value.name, "force_z");
  EXPECT_EQ(p.header.config_hash, h.config_hash);
  EXPECT_EQ(p.header.seed, 42u);
  EXPECT_EQ(p.header.tool_version, "1.2.3");
  EXPECT_EQ(p.header.config_echo, h.config_echo);
  ASSERT_EQ(p.curve.metadata.size(), 1u);
  EXPECT_EQ(p.curve.metadata[0].second, "closed");
  EXPECT_EQ(curve_body(p.curve), curve_body(c));
}

TEST(Curve, NumbersUseShortestRoundTripForm) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e-25), "1e-25");
  EXPECT_EQ(format_number(-2.5), "-2.5");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Curve, ValidationRejectsBadCurves) {
  ScalarCurve c;
  c.abscissa = {"x", "1"};
  c.value = {"y", "1"};
  c.push(1.0, 1.0);
  c.push(1.0, 2.0);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  ScalarCurve d = c;
  d.x[1] = 2.0;
  d.y[1] = NAN;
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d.y[1] = 0.0;
  EXPECT_NO_THROW(d.validate());
}

TEST(Runner, NessCurvesHaveTheExactAnchors) {
  const auto dir = scratch("ness");
  RunOptions opt;
  opt.out_dir = dir.string();
  const auto files = run_scenario(parse_config(""), "ness", opt);
  ASSERT_EQ(files.size(), 3u);
  std::ifstream a(dir / "ness_n-3.csv"), b(dir / "ness_n-6.csv");
  const auto n3 = read_curve(a).curve, n6 = read_curve(b).curve;
  ASSERT_EQ(n3.size(), 91u);
  EXPECT_EQ(n3.x.back(), 0.9);
  for (std::size_t i = 0; i < n3.size(); ++i) {
    EXPECT_NEAR(n3.y[i], 1.0, 1e-12);
    EXPECT_NEAR(n6.y[i], std::sqrt(1.0 - n6.x[i] * n6.x[i]), 1e-12);
  }
  fs::remove_all(dir);
}

TEST(Runner, SmallWrenchTorqueCrossesZeroAtTheEnvironmentTemperature) {
  const auto dir = scratch("torque");
  RunOptions opt;
  opt.out_dir = dir.string();
  run_scenario(parse_config("[geometry]\npreset = wrench:10nm,10nm,1nm\n"), "torque", opt);
  std::ifstream in(dir / "torque_tau_hat.csv");
  const auto c = read_curve(in).curve;
  bool seen = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.x[i] == 300.0) {
      EXPECT_EQ(c.y[i], 0.0);
      seen = true;
    }
    if (c.x[i] < 300.0) EXPECT_GT(c.y[i], 0.0);
    if (c.x[i] > 300.0) EXPECT_LT(c.y[i], 0.0);
  }
  EXPECT_TRUE(seen);
  fs::remove_all(dir);
}

TEST(Runner, RepeatedRunsAndThreadCountsGiveIdenticalBodies) {
  const auto cfg = parse_config(
      "[geometry]\nkind = janus\nradius = 50 nm\n[propel]\ndrive = spectral\n"
      "[sweep]\nvariable = body_temperature\nfrom = 200 K\nto = 500 K\npoints = 4\n");
  std::string ref;
  for (unsigned t : {1u, 4u, 8u, 4u}) {
    const auto dir = scratch("det" + std::to_string(t));
    RunOptions opt;
    opt.out_dir = dir.string();
    opt.threads = t;
    run_scenario(cfg, "propel", opt);
    const std::string body = body_of(dir / "propel_force.csv");
    if (ref.empty()) ref = body;
    EXPECT_EQ(body, ref) << "threads " << t;
    fs::remove_all(dir);
  }
}

TEST(Runner, HeaderEchoReproducesTheRun) {
  const auto dir = scratch("echo");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.timestamp = "fixed";
  run_scenario(parse_config("[relax]\nu0 = 1.5\n"), "relax", opt);
  std::ifstream in(dir / "relax_terminal.csv");
  const auto p = read_curve(in);
  const auto echoed = parse_config(p.header.config_echo);
  EXPECT_EQ(echoed.real("relax", "u0", 0.0), 1.5);
  EXPECT_EQ(echoed.text("geometry", "kind", ""), "janus");
  EXPECT_EQ(p.header.timestamp, "fixed");
  // Running the echo gives the same numbers.
  const auto dir2 = scratch("echo2");
  opt.out_dir = dir2.string();
  run_scenario(echoed, "relax", opt);
  EXPECT_EQ(slurp(dir / "relax_terminal.csv"), slurp(dir2 / "relax_terminal.csv"));
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST(Runner, OverridesAndConfigErrors) {
  RunOptions opt;
  opt.seed = 99;
  opt.rel_tol = 1e-8;
  const auto r = resolve_config(parse_config(""), "sweep", opt);
  EXPECT_EQ(r.integer("quadrature", "seed", 0), 99);
  EXPECT_EQ(r.real("quadrature", "rel_tol", 0.0), 1e-8);

  EXPECT_THROW(resolve_config(parse_config("[friction]\nseparation = 1 nm\n"), "ness", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config("[sweep]\nvariable = velocity\nfrom = 0 c\n"), "propel", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config("[material.A]\npreset = gold\nchi0 = 2\n"), "propel", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config("[material.A]\nkind = drude\nchi0 = 2\n"), "propel", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config("[geometry]\npreset = janus:-1nm\n"), "propel", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config("[quadrature]\nrel_tol = 0.5\n"), "ness", {}), ConfigError);
  EXPECT_THROW(resolve_config(parse_config(""), "fly", {}), ConfigError);
  EXPECT_EQ(exit_code_for(ConfigError("x", 1, 1)), 2);
  EXPECT_EQ(exit_code_for(NumericalFailure("x")), 3);
  EXPECT_EQ(exit_code_for(fluct::ConvergenceError("x", 0, 0)), 3);
}

TEST(Runner, NumericalFailuresNameThePoint) {
  // One subdivision cannot resolve the spectral integral.
  const auto dir = scratch("fail");
  RunOptions opt;
  opt.out_dir = dir.string();
  const auto cfg = parse_config(
      "[quadrature]\nmax_subdivisions = 16\nrel_tol = 1e-12\n[propel]\ndrive = spectral\n"
      "[sweep]\nvariable = body_temperature\nfrom = 600 K\nto = 600 K\npoints = 1\n");
  try {
    run_scenario(cfg, "propel", opt);
    FAIL() << "expected a numerical failure";
  } catch (const NumericalFailure& e) {
    EXPECT_NE(std::string(e.what()).find("T' = 600 K"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("best estimate"), std::string::npos);
    EXPECT_EQ(exit_code_for(e), 3);
  }
  fs::remove_all(dir);
}
