#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "fluctamp/analytic.hpp"
#include "fluctamp/fock.hpp"

namespace fluctamp {

/// Input amplitude, splitter reflectivities, truncation and detector
/// efficiencies of the amplifier.
struct SchemeConfig {
  complex alpha = 0.5;
  double r1 = 0.4;
  double r2 = 0.4;
  double r3 = 0.4;
  /// 0 selects resolved_dim()'s default.
  std::size_t dim = 0;
  double eta_qnd = 1.0;
  double eta_pd1 = 1.0;
  double eta_pd2 = 1.0;

  SplitterTriple splitters() const { return {r1, r2, r3}; }
};

/// Truncation used for cfg: the explicit dim, or max(30, default_dim(2|alpha|))
/// so that the ideally amplified target |2 alpha> is representable.
std::size_t resolved_dim(const SchemeConfig& cfg);

/// Throws ConfigError for reflectivities outside [0, 1), efficiencies outside
/// [0, 1] or an explicit dim below 2.
void validate(const SchemeConfig& cfg);

/// Photon numbers registered by the QND detector, PD1 and PD2.
struct Outcome {
  std::size_t n_qnd = 0;
  std::size_t n_pd1 = 0;
  std::size_t n_pd2 = 0;

  bool operator==(const Outcome&) const = default;
};

/// Single-photon outcomes in table order: the success branch (1,0,1) first,
/// the all-zero branch last.
inline constexpr std::array<Outcome, 8> kSinglePhotonOutcomes{{
    {1, 0, 1}, {1, 0, 0}, {1, 1, 1}, {1, 1, 0}, {0, 1, 1}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0},
}};

inline constexpr Outcome kSuccessOutcome{1, 0, 1};

struct BranchResult {
  Outcome outcome;
  double probability = 0.0;
  /// Normalized output of mode 1; empty when the branch cannot occur.
  std::optional<FockState> output;
  complex mean_a = 0.0;
  double mean_a_abs = 0.0;
  /// |<a_out>| / |alpha|; 0 for a vacuum input.
  double g_eff = 0.0;
  /// Overlap with the coherent state of amplitude g_eff * alpha.
  double fidelity_eff = 0.0;
  /// Overlap with |2 alpha>.
  double fidelity_ideal = 0.0;

  bool defined() const { return output.has_value(); }
};

/// Runs the three heralded stages for one detection pattern:
///   BS1 with vacuum, condition QND on n_qnd;
///   BS2 with the re-injected |n_qnd>, condition PD1 on n_pd1;
///   BS3 with vacuum, condition PD2 on n_pd2.
/// An impossible pattern yields probability 0 and no output.
BranchResult run_branch(const SchemeConfig& cfg, const Outcome& outcome);

struct BranchTable {
  std::array<BranchResult, 8> branches;
  /// 1 - sum of the eight branch probabilities: some detector saw > 1 photon.
  double other_probability = 0.0;
};

BranchTable enumerate_single_photon_branches(const SchemeConfig& cfg);

/// 1 - |<beta|psi>|^2 with beta the branch's own <a>; zero for an exactly
/// coherent output. Throws ZeroProbability for an undefined branch.
double coherence_check(const BranchResult& branch, const SchemeConfig& cfg);

struct SweepRow {
  double alpha_abs;
  double r;
  double g_eff;
  double f_eff;
  double f_ideal;
  double p_succ;
};

/// Success-branch metrics on the grid alpha_abs x r (real alpha, equal
/// reflectivities). dim = 0 uses the per-point default.
std::vector<SweepRow> gain_fidelity_sweep(const std::vector<double>& alpha_abs,
                                          const std::vector<double>& r, std::size_t dim = 0);

/// Normalized a a^dagger a |alpha>, the weak-splitter limit of the success
/// branch. Throws ZeroNorm for alpha = 0.
FockState operator_oracle(const SchemeConfig& cfg);

}  // namespace fluctamp
