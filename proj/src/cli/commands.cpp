#include "fluctamp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "fluctamp/errors.hpp"
#include "fluctamp/format.hpp"
#include "fluctamp/optimizer.hpp"

namespace fluctamp::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::filesystem::path prepare(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
  return cfg.out_dir / name;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    out_ << header << '\n';
  }

  CsvWriter& field(double v) { return raw(format_double(v)); }
  CsvWriter& field(std::size_t v) { return raw(std::to_string(v)); }
  CsvWriter& raw(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  void close() {
    out_.close();
    if (!out_) throw IoError("write failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  bool first_ = true;
};

std::vector<double> refined_thresholds(const RunConfig& cfg, const std::vector<OptResult>& coarse) {
  if (cfg.refine_step <= 0.0 || coarse.empty()) return {};
  const OptResult* r_max = nullptr;
  const OptResult* f_min = nullptr;
  for (const auto& r : coarse) {
    if (!r.error.empty()) continue;
    const double r_mean = (r.r_opt[0] + r.r_opt[1] + r.r_opt[2]) / 3.0;
    if (!r_max || r_mean > (r_max->r_opt[0] + r_max->r_opt[1] + r_max->r_opt[2]) / 3.0) r_max = &r;
    if (!f_min || r.f_opt < f_min->f_opt) f_min = &r;
  }
  std::vector<double> extra;
  for (const OptResult* centre : {r_max, f_min}) {
    if (!centre) continue;
    const double c = centre->g_eff0;
    const auto n = static_cast<int>(std::floor(cfg.geff0_step / cfg.refine_step + 1e-9));
    for (int k = -n + 1; k < n; ++k) {
      const double g = c + k * cfg.refine_step;
      if (g < cfg.geff0_min - 1e-12 || g > cfg.geff0_max + 1e-12) continue;
      const auto near = [&](double other) { return std::abs(other - g) < 1e-9; };
      if (std::any_of(coarse.begin(), coarse.end(), [&](const OptResult& r) { return near(r.g_eff0); })) continue;
      if (std::any_of(extra.begin(), extra.end(), near)) continue;
      extra.push_back(g);
    }
  }
  std::sort(extra.begin(), extra.end());
  return extra;
}

json complex_json(complex c) { return json::array({c.real(), c.imag()}); }

std::string branch_label(std::size_t index) { return std::to_string(index + 1); }

}  // namespace

CommandOutput cmd_table1(const RunConfig& cfg) {
  const BranchTable table = enumerate_single_photon_branches(cfg.scheme);
  const auto path = prepare(cfg, "table1.csv");
  CsvWriter csv(path, "state,n_qnd,n_pd1,n_pd2,abs_mean_a,one_minus_F,P");
  for (std::size_t k = 0; k < table.branches.size(); ++k) {
    const BranchResult& b = table.branches[k];
    csv.raw(branch_label(k)).field(b.outcome.n_qnd).field(b.outcome.n_pd1).field(b.outcome.n_pd2);
    csv.field(b.defined() ? b.mean_a_abs : kNaN).field(b.defined() ? 1.0 - b.fidelity_eff : kNaN);
    csv.field(b.probability).end_row();
  }
  csv.raw("other").raw("").raw("").raw("").raw("").raw("").field(table.other_probability).end_row();
  csv.close();
  return {{path}, kOk};
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
  const auto rows = gain_fidelity_sweep(cfg.sweep_alphas(), cfg.sweep_r, cfg.scheme.dim);
  const auto path = prepare(cfg, "sweep.csv");
  CsvWriter csv(path, "alpha_abs,r,g_eff,F_eff,F_ideal,P_succ");
  for (const auto& r : rows) {
    csv.field(r.alpha_abs).field(r.r).field(r.g_eff).field(r.f_eff).field(r.f_ideal).field(r.p_succ).end_row();
  }
  csv.close();
  return {{path}, kOk};
}

CommandOutput cmd_optimize(const RunConfig& cfg) {
  OptSettings settings;
  settings.fidelity_dim = cfg.scheme.dim;
  std::vector<OptResult> results = sweep(cfg.geff0_list(), settings);
  const auto extra = refined_thresholds(cfg, results);
  if (!extra.empty()) {
    auto more = sweep(extra, settings);
    results.insert(results.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    std::stable_sort(results.begin(), results.end(),
                     [](const OptResult& a, const OptResult& b) { return a.g_eff0 < b.g_eff0; });
  }

  const auto path = prepare(cfg, "optimize.csv");
  CsvWriter csv(path, "g_eff0,p_opt,alpha_opt,r_opt,f_opt,converged");
  bool all_converged = true;
  for (const auto& r : results) {
    const bool ok = r.error.empty() && r.converged;
    all_converged = all_converged && ok;
    if (r.error.empty()) {
      csv.field(r.g_eff0).field(r.p_opt).field(r.alpha_opt).field((r.r_opt[0] + r.r_opt[1] + r.r_opt[2]) / 3.0);
      csv.field(r.f_opt);
    } else {
      csv.field(r.g_eff0).field(kNaN).field(kNaN).field(kNaN).field(kNaN);
    }
    csv.raw(ok ? "true" : "false").end_row();
  }
  csv.close();
  return {{path}, all_converged ? kOk : kNotConverged};
}

CommandOutput cmd_wigner(const RunConfig& cfg) {
  CommandOutput out;
  for (const auto& sel : cfg.branches) {
    WignerGrid grid;
    if (sel == "input") {
      grid = wigner_coherent(cfg.scheme.alpha, cfg.grid);
    } else {
      const std::size_t index = static_cast<std::size_t>(sel[0] - '1');
      const BranchResult b = run_branch(cfg.scheme, kSinglePhotonOutcomes[index]);
      if (!b.defined()) {
        throw ZeroProbability("branch " + sel + " has zero probability for this configuration; no Wigner grid");
      }
      grid = wigner_of_state(*b.output, cfg.grid);
    }
    const auto path = prepare(cfg, sel == "input" ? "wigner_input.csv" : "wigner_branch" + sel + ".csv");
    export_grid(grid, path);
    out.files.push_back(path);
  }
  return out;
}

CommandOutput cmd_branches(const RunConfig& cfg) {
  const BranchTable table = enumerate_single_photon_branches(cfg.scheme);
  json doc;
  doc["config"] = {
      {"alpha", complex_json(cfg.scheme.alpha)},
      {"r", {cfg.scheme.r1, cfg.scheme.r2, cfg.scheme.r3}},
      {"dim", resolved_dim(cfg.scheme)},
      {"eta", {cfg.scheme.eta_qnd, cfg.scheme.eta_pd1, cfg.scheme.eta_pd2}},
  };
  json branches = json::array();
  for (std::size_t k = 0; k < table.branches.size(); ++k) {
    const BranchResult& b = table.branches[k];
    json j = {
        {"state", k + 1},
        {"outcome", {b.outcome.n_qnd, b.outcome.n_pd1, b.outcome.n_pd2}},
        {"probability", b.probability},
        {"defined", b.defined()},
    };
    if (b.defined()) {
      j["mean_a"] = complex_json(b.mean_a);
      j["abs_mean_a"] = b.mean_a_abs;
      j["g_eff"] = b.g_eff;
      j["fidelity_eff"] = b.fidelity_eff;
      j["fidelity_ideal"] = b.fidelity_ideal;
      json amps = json::array();
      for (const auto& c : b.output->amps()) amps.push_back(complex_json(c));
      j["amplitudes"] = std::move(amps);
    }
    branches.push_back(std::move(j));
  }
  doc["branches"] = std::move(branches);
  doc["other_probability"] = table.other_probability;

  const auto path = prepare(cfg, "branches.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
  return {{path}, kOk};
}

}  // namespace fluctamp::cli
