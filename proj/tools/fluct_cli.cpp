#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fluct/cli/config.hpp"
#include "fluct/cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace fluct::cli;
  CLI::App app{"Nonequilibrium fluctuational forces and torques"};
  app.set_version_flag("--version", std::string("fluct ") + FLUCT_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  RunOptions opt;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool dry_run = false;

  const std::map<std::string, std::string> about{
      {"friction", "drag on a particle moving above a conducting plate"},
      {"eh", "Einstein-Hopf drag on an atom in blackbody radiation, and slow-down times"},
      {"ness", "steady-state temperature ratio of a moving particle"},
      {"propel", "self-propulsive force on a Janus ball out of equilibrium"},
      {"torque", "chiral or nonreciprocal self-torque"},
      {"relax", "terminal velocity or angular velocity of a cooling body"},
      {"sweep", "dimensionless geometric factors versus omega a"},
  };
  for (auto name : subcommands()) {
    auto* sub = app.add_subcommand(std::string(name), about.at(std::string(name)));
    sub->add_option("--config", config_path, "scenario file; defaults apply when omitted")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    sub->add_option("--seed", seed, "Monte Carlo seed (overrides [quadrature] seed)");
    sub->add_option("--tol", tol, "relative tolerance (overrides [quadrature] rel_tol)");
    sub->add_flag("--print-config", dry_run, "print the resolved config and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  opt.seed = seed;
  opt.rel_tol = tol;

  try {
    const ScenarioConfig cfg = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
    if (dry_run) {
      std::cout << resolve_config(cfg, sub, opt).serialize();
      return 0;
    }
    for (const auto& path : run_scenario(cfg, sub, opt)) std::cout << path << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << (config_path.empty() ? std::string("config") : config_path);
    if (e.line() > 0) std::cerr << ':' << e.line() << ':' << e.column();
    std::cerr << ": error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fluct " << sub << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}
