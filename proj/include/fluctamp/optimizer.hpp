#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fluctamp {

/// Point in the search space: (|alpha|, r1, r2, r3).
using Params = std::array<double, 4>;

struct Bounds {
  double alpha_min = 1e-6;
  double alpha_max = 2.0;
  double r_min = 1e-6;
  double r_max = 0.9;
};

/// maximize P_succ(|alpha|, r1, r2, r3) subject to g_eff >= g_eff0.
struct OptProblem {
  double g_eff0 = 1.4;
  Bounds bounds;
};

struct OptSettings {
  /// Barrier weights mu_k = mu0 * mu_factor^k, k < barrier_stages.
  int barrier_stages = 10;
  double mu0 = 10.0;
  double mu_factor = 0.2;
  double initial_step = 0.1;
  double step_floor = 1e-9;
  /// Budget of objective evaluations per inner search.
  std::size_t max_evaluations = 2'000'000;
  /// Search only over (|alpha|, r) with r1 = r2 = r3 = r.
  bool symmetric = false;
  /// Starting points; empty selects default_starts().
  std::vector<Params> starts;
  /// Extra start tried in addition to `starts` (sweep warm start).
  std::optional<Params> warm_start;
  /// Truncation for the fidelity evaluation at the optimum; 0 = default.
  std::size_t fidelity_dim = 0;
};

/// {0.2, 0.5, 0.8} x {0.1, 0.3, 0.45} with equal reflectivities.
std::vector<Params> default_starts();

struct BarrierStage {
  double mu;
  /// log P_succ at the stage optimum.
  double log_p;
};

struct OptResult {
  double g_eff0 = 0.0;
  double p_opt = 0.0;
  double alpha_opt = 0.0;
  std::array<double, 3> r_opt{};
  double g_opt = 0.0;
  /// g_opt - g_eff0.
  double slack = 0.0;
  /// Simulated overlap of the success-branch output with |g_eff alpha>.
  double f_opt = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<BarrierStage> barrier_trace;
  /// Non-empty when the point failed (infeasible or simulation error).
  std::string error;
};

/// Log-barrier method over multiple starts: each stage maximizes
/// log P + mu log(g - g0) by Hooke-Jeeves pattern search, warm-started from
/// the previous stage. Infeasible starts are pulled toward the origin
/// (alpha, r -> 0) until the gain constraint holds. The best start wins under
/// a total order (P, then parameters), so the outcome is independent of
/// evaluation order. Throws Infeasible when no start can be made feasible.
/// A barrier trace whose log P decreases marks the result not converged.
OptResult maximize(const OptProblem& problem, const OptSettings& settings = {});

/// One maximize() per threshold, each warm-started from the previous optimum.
/// Failures are recorded in OptResult::error and the sweep continues.
std::vector<OptResult> sweep(const std::vector<double>& g_eff0, const OptSettings& settings = {},
                             const Bounds& bounds = {});

/// Largest pairwise difference between the optimal reflectivities.
double verify_symmetry(const OptResult& result);

}  // namespace fluctamp
