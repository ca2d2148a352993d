#pragma once

#include <filesystem>
#include <vector>

#include "fluctamp/cli/run_config.hpp"

namespace fluctamp::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericFailure = 3,
  kNotConverged = 4,
};

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  int exit_code = kOk;
};

/// table1.csv: state,n_qnd,n_pd1,n_pd2,abs_mean_a,one_minus_F,P plus the "other" row.
CommandOutput cmd_table1(const RunConfig& cfg);
/// sweep.csv: alpha_abs,r,g_eff,F_eff,F_ideal,P_succ.
CommandOutput cmd_sweep(const RunConfig& cfg);
/// optimize.csv: g_eff0,p_opt,alpha_opt,r_opt,f_opt,converged.
CommandOutput cmd_optimize(const RunConfig& cfg);
/// wigner_<selector>.csv per requested branch. Refuses impossible branches
/// with ZeroProbability.
CommandOutput cmd_wigner(const RunConfig& cfg);
/// branches.json: full BranchResult dump of the eight single-photon branches.
CommandOutput cmd_branches(const RunConfig& cfg);

}  // namespace fluctamp::cli
