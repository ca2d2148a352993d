// Command-line front end: reproduces the branch table, the gain/fidelity
// sweeps, the constrained optimum curves and Wigner grids as files.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fluctamp/cli/commands.hpp"
#include "fluctamp/errors.hpp"

namespace cli = fluctamp::cli;

int main(int argc, char** argv) {
  CLI::App app{"Heralded subtract/add/subtract noiseless amplifier toolkit"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  cli::FlagOverrides flags;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--alpha", flags.alpha, "Input amplitude 're' or 're,im'");
    sub->add_option("--r", flags.r, "Reflectivity: shared 'r', 'r1,r2,r3', or a sweep list");
    sub->add_option("--dim", flags.dim, "Fock truncation dimension");
    sub->add_option("--eta-qnd", flags.eta_qnd, "QND detector efficiency");
    sub->add_option("--eta-pd1", flags.eta_pd1, "PD1 efficiency");
    sub->add_option("--eta-pd2", flags.eta_pd2, "PD2 efficiency");
    sub->add_option("--geff0-min", flags.geff0_min, "Smallest gain threshold");
    sub->add_option("--geff0-max", flags.geff0_max, "Largest gain threshold");
    sub->add_option("--geff0-step", flags.geff0_step, "Gain threshold spacing");
    sub->add_option("--grid", flags.grid, "Wigner grid 'xmin,xmax,pmin,pmax,nx,np'");
    sub->add_option("--branch", flags.branch, "Branch 1..8 or 'input'");
  };

  using Command = cli::CommandOutput (*)(const cli::RunConfig&);
  Command command = nullptr;
  const std::pair<const char*, Command> commands[] = {
      {"table1", cli::cmd_table1},     {"sweep", cli::cmd_sweep},       {"optimize", cli::cmd_optimize},
      {"wigner", cli::cmd_wigner},     {"branches", cli::cmd_branches},
  };
  const char* descriptions[] = {
      "Single-photon branch table (table1.csv)",
      "Success-branch gain and fidelities vs amplitude (sweep.csv)",
      "Gain-constrained success-probability optimum (optimize.csv)",
      "Wigner grids of selected branches (wigner_*.csv)",
      "Raw branch results (branches.json)",
  };
  for (std::size_t k = 0; k < std::size(commands); ++k) {
    auto* sub = app.add_subcommand(commands[k].first, descriptions[k]);
    add_common(sub);
    sub->callback([&, k] { command = commands[k].second; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  try {
    const cli::RunConfig cfg =
        cli::resolve(config_path ? std::optional<std::filesystem::path>(*config_path) : std::nullopt, flags);
    const cli::CommandOutput out = command(cfg);
    for (const auto& f : out.files) std::cout << f.string() << '\n';
    if (out.exit_code == cli::kNotConverged) std::cerr << "error: optimizer did not converge for some thresholds\n";
    return out.exit_code;
  } catch (const fluctamp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const fluctamp::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const fluctamp::Error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return cli::kNumericFailure;
  }
}
