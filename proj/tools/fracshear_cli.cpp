// Command-line front end: run scenarios from a configuration file.
//
//   fracshear simulate --config run.ini --out results/
//   fracshear sweep    --config psi.ini --out results/ --workers 4
//   fracshear plotdata --input results/diagnostics.csv --out plots/
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or configuration error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracshear/config.hpp"
#include "fracshear/errors.hpp"
#include "fracshear/plot_data.hpp"
#include "fracshear/scenarios.hpp"

namespace fs = std::filesystem;
using namespace fracshear;

namespace {

struct Common {
  std::string config;
  std::string out = "out";
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--workers", c.workers, "parallel sweep workers")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "random seed (overrides the configuration)");
}

int report(const ScenarioResult& r, const fs::path& out) {
  for (const auto& c : r.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
  for (const auto& e : r.point_errors) std::cout << "ERROR " << e << '\n';
  std::cout << r.scenario << ": " << (r.passed() ? "all checks passed" : "check failed") << " (artifacts in " << out.string()
            << ")\n";
  return r.passed() ? 0 : 1;
}

// Runs the configured scenario after checking that it belongs to the subcommand.
int run(const Common& c, const std::vector<std::string>& allowed) {
  RunConfig cfg = parse_config(c.config);
  if (c.workers) cfg.workers = *c.workers;
  if (c.seed) cfg.seed = *c.seed;
  if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), cfg.scenario) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw ConfigError("scenario '" + cfg.scenario + "' cannot be run by this subcommand (expected one of: " + list + ")");
  }
  const fs::path out = c.out;
  return report(run_scenario(cfg, out), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier-spectral simulation and operator analysis for aggregation with fractional diffusion and shear"};
  app.set_version_flag("--version", std::string(FRACSHEAR_VERSION));
  app.require_subcommand(1);

  Common sim, lin, psi, chk, swp;
  add_common(app.add_subcommand("simulate", "nonlinear run (suppression-demo, blowup-demo)"), sim);
  add_common(app.add_subcommand("linear", "semigroup decay sweep (linear-decay-sweep)"), lin);
  add_common(app.add_subcommand("psi", "pseudospectral bound sweep (psi-sweep, gearhart-pruss)"), psi);
  add_common(app.add_subcommand("check", "property suites (duhamel-check, energy-audit, kernel-props)"), chk);
  add_common(app.add_subcommand("sweep", "any scenario named in the configuration"), swp);

  std::string plot_input, plot_out = "plots";
  auto* plot = app.add_subcommand("plotdata", "tidy CSV and gnuplot stubs from a diagnostics CSV");
  plot->add_option("--input", plot_input, "diagnostics.csv from a simulate run")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("simulate")) return run(sim, {"suppression-demo", "blowup-demo"});
    if (app.got_subcommand("linear")) return run(lin, {"linear-decay-sweep"});
    if (app.got_subcommand("psi")) return run(psi, {"psi-sweep", "gearhart-pruss"});
    if (app.got_subcommand("check")) return run(chk, {"duhamel-check", "energy-audit", "kernel-props"});
    if (app.got_subcommand("sweep")) return run(swp, {});
    if (app.got_subcommand("plotdata")) {
      const auto rec = read_diagnostics_csv(plot_input);
      emit_plot_data(decay_plot(rec), plot_out);
      emit_plot_data(mode_energy_plot(rec), plot_out);
      std::cout << "wrote plot data to " << plot_out << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
