#include "fluctamp/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluctamp/errors.hpp"
#include "fluctamp/modes.hpp"

namespace fluctamp {

std::size_t resolved_dim(const SchemeConfig& cfg) {
  if (cfg.dim != 0) return cfg.dim;
  return std::max<std::size_t>(30, default_dim(2.0 * std::abs(cfg.alpha)));
}

void validate(const SchemeConfig& cfg) {
  for (const double r : {cfg.r1, cfg.r2, cfg.r3}) {
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError("reflectivity must lie in [0, 1)");
  }
  for (const double eta : {cfg.eta_qnd, cfg.eta_pd1, cfg.eta_pd2}) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("detector efficiency must lie in [0, 1]");
  }
  if (cfg.dim == 1) throw ConfigError("dim must be >= 2");
  if (!std::isfinite(cfg.alpha.real()) || !std::isfinite(cfg.alpha.imag())) {
    throw ConfigError("alpha must be finite");
  }
}

namespace {

// Leading `dim` amplitudes of |beta>. Overlaps with a state supported on
// n < dim only see these, so the truncation is exact for that purpose.
FockState coherent_reference(complex beta, std::size_t dim) {
  const std::size_t full = std::max(dim, default_dim(std::abs(beta)));
  return coherent_state(beta, full).resized(dim, 1.0);
}

// Mixes `state` with `ancilla` on a splitter of reflectivity r and keeps the
// transmitted mode conditioned on n photons in the reflected one.
Projection herald(const FockState& state, const FockState& ancilla, double r, std::size_t n) {
  const TwoModeState mixed = apply_beam_splitter(tensor(state, ancilla), BeamSplitter(r));
  return project_mode2(mixed, n);
}

}  // namespace

BranchResult run_branch(const SchemeConfig& cfg, const Outcome& outcome) {
  validate(cfg);
  const std::size_t dim = resolved_dim(cfg);
  if (outcome.n_qnd >= dim || outcome.n_pd1 >= dim || outcome.n_pd2 >= dim) {
    throw IndexError("run_branch: outcome exceeds truncation dim " + std::to_string(dim));
  }

  BranchResult result;
  result.outcome = outcome;

  const FockState vacuum = fock_state(0, dim);
  FockState state = coherent_state(cfg.alpha, dim);
  double probability = 1.0;
  try {
    auto s1 = herald(state, vacuum, cfg.r1, outcome.n_qnd);
    auto s2 = herald(s1.collapsed, fock_state(outcome.n_qnd, dim), cfg.r2, outcome.n_pd1);
    auto s3 = herald(s2.collapsed, vacuum, cfg.r3, outcome.n_pd2);
    probability = s1.probability * s2.probability * s3.probability;
    state = std::move(s3.collapsed);
  } catch (const ZeroProbability&) {
    return result;
  }

  result.probability = detector_adjusted(probability, cfg.eta_qnd, cfg.eta_pd1, cfg.eta_pd2);
  const StateMetrics m = metrics(state);
  result.mean_a = m.mean_a;
  result.mean_a_abs = std::abs(m.mean_a);

  const double alpha_abs = std::abs(cfg.alpha);
  const complex direction = alpha_abs > 0.0 ? cfg.alpha / alpha_abs : complex(1.0);
  result.g_eff = alpha_abs > 0.0 ? result.mean_a_abs / alpha_abs : 0.0;
  result.fidelity_eff = std::norm(inner_product(coherent_reference(result.mean_a_abs * direction, dim), state));
  result.fidelity_ideal = std::norm(inner_product(coherent_reference(2.0 * cfg.alpha, dim), state));
  result.output = std::move(state);
  return result;
}

BranchTable enumerate_single_photon_branches(const SchemeConfig& cfg) {
  BranchTable table;
  double total = 0.0;
  for (std::size_t k = 0; k < kSinglePhotonOutcomes.size(); ++k) {
    table.branches[k] = run_branch(cfg, kSinglePhotonOutcomes[k]);
    total += table.branches[k].probability;
  }
  table.other_probability = 1.0 - total;
  return table;
}

double coherence_check(const BranchResult& branch, const SchemeConfig&) {
  if (!branch.output) throw ZeroProbability("coherence_check: branch has no output state");
  const FockState& out = *branch.output;
  return 1.0 - std::norm(inner_product(coherent_reference(branch.mean_a, out.dim()), out));
}

std::vector<SweepRow> gain_fidelity_sweep(const std::vector<double>& alpha_abs, const std::vector<double>& r,
                                          std::size_t dim) {
  if (alpha_abs.empty() || r.empty()) throw ConfigError("sweep ranges must be non-empty");
  std::vector<SweepRow> rows;
  rows.reserve(alpha_abs.size() * r.size());
  for (const double rv : r) {
    for (const double a : alpha_abs) {
      if (!(a > 0.0)) throw ConfigError("sweep amplitudes must be positive");
      SchemeConfig cfg;
      cfg.alpha = a;
      cfg.r1 = cfg.r2 = cfg.r3 = rv;
      cfg.dim = dim;
      const BranchResult b = run_branch(cfg, kSuccessOutcome);
      rows.push_back({a, rv, b.g_eff, b.fidelity_eff, b.fidelity_ideal, b.probability});
    }
  }
  return rows;
}

FockState operator_oracle(const SchemeConfig& cfg) {
  const FockState in = coherent_state(cfg.alpha, resolved_dim(cfg));
  return annihilate(create(annihilate(in))).normalized();
}

}  // namespace fluctamp
