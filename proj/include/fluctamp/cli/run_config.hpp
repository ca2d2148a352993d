#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fluctamp/scheme.hpp"
#include "fluctamp/wigner.hpp"
#include "json.hpp"

namespace fluctamp::cli {

/// Everything a subcommand needs. Resolution order: flag > file > default.
struct RunConfig {
  SchemeConfig scheme;

  double sweep_alpha_min = 0.01;
  double sweep_alpha_max = 2.0;
  std::size_t sweep_alpha_count = 200;
  std::vector<double> sweep_r{0.05, 0.2, 0.4};

  double geff0_min = 1.05;
  double geff0_max = 1.95;
  double geff0_step = 0.05;
  /// Spacing of the extra thresholds placed around the r_opt maximum and the
  /// F_opt minimum of the coarse sweep; 0 disables refinement.
  double refine_step = 0.01;

  GridSpec grid;
  /// Wigner selectors: "1".."8" or "input".
  std::vector<std::string> branches{"1"};

  std::filesystem::path out_dir = ".";

  std::vector<double> sweep_alphas() const;
  std::vector<double> geff0_list() const;
};

/// Raw flag values as typed on the command line.
struct FlagOverrides {
  std::optional<std::string> alpha;
  std::optional<std::string> r;
  std::optional<std::size_t> dim;
  std::optional<double> eta_qnd;
  std::optional<double> eta_pd1;
  std::optional<double> eta_pd2;
  std::optional<double> geff0_min;
  std::optional<double> geff0_max;
  std::optional<double> geff0_step;
  std::optional<std::string> grid;
  std::optional<std::string> branch;
  std::optional<std::string> out;
};

/// Applies the keys of a JSON config document. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);
void apply_flags(RunConfig& cfg, const FlagOverrides& flags);

/// Defaults, then the optional config file, then flags; validated.
RunConfig resolve(const std::optional<std::filesystem::path>& config_file, const FlagOverrides& flags);

/// Throws ConfigError on any out-of-range value.
void validate(const RunConfig& cfg);

/// "a" or "re,im".
complex parse_alpha(const std::string& text);
/// "r" (shared) or "r1,r2,r3".
std::vector<double> parse_list(const std::string& text);
/// "xmin,xmax,pmin,pmax,nx,np".
GridSpec parse_grid(const std::string& text);

}  // namespace fluctamp::cli
