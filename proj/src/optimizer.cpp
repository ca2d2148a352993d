#include "fluctamp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "fluctamp/analytic.hpp"
#include "fluctamp/errors.hpp"
#include "fluctamp/scheme.hpp"

namespace fluctamp {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

struct Evaluation {
  double p;
  double g;
};

Evaluation evaluate(const Params& x) {
  const SplitterTriple s{x[1], x[2], x[3]};
  return {p_succ_closed(x[0], s), g_eff_closed(x[0], s)};
}

// Search coordinates <-> (|alpha|, r1, r2, r3).
class Parameterization {
 public:
  Parameterization(bool symmetric, const Bounds& b) : symmetric_(symmetric), bounds_(b) {}

  std::size_t size() const { return symmetric_ ? 2 : 4; }

  Params expand(const std::vector<double>& v) const {
    return symmetric_ ? Params{v[0], v[1], v[1], v[1]} : Params{v[0], v[1], v[2], v[3]};
  }

  std::vector<double> reduce(const Params& x) const {
    if (symmetric_) return {x[0], (x[1] + x[2] + x[3]) / 3.0};
    return {x.begin(), x.end()};
  }

  double clamp(std::size_t i, double v) const {
    return i == 0 ? std::clamp(v, bounds_.alpha_min, bounds_.alpha_max) : std::clamp(v, bounds_.r_min, bounds_.r_max);
  }

 private:
  bool symmetric_;
  Bounds bounds_;
};

struct SearchResult {
  std::vector<double> x;
  double f;
  std::size_t evaluations;
  bool budget_exhausted;
};

// Hooke-Jeeves pattern search for a maximum; candidates are clipped to the box.
SearchResult pattern_search(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
                            const Parameterization& param, double step, double floor, std::size_t budget) {
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& v) {
    ++evals;
    return f(v);
  };
  auto explore = [&](std::vector<double> base, double fbase, double h) {
    for (std::size_t i = 0; i < base.size(); ++i) {
      const double orig = base[i];
      bool moved = false;
      for (const double sign : {1.0, -1.0}) {
        base[i] = param.clamp(i, orig + sign * h);
        if (base[i] == orig) continue;
        const double fc = eval(base);
        if (fc > fbase) {
          fbase = fc;
          moved = true;
          break;
        }
      }
      if (!moved) base[i] = orig;
    }
    return std::pair{base, fbase};
  };

  double fx = eval(x);
  while (step >= floor && evals < budget) {
    auto [y, fy] = explore(x, fx, step);
    if (!(fy > fx)) {
      step *= 0.5;
      continue;
    }
    // Pattern moves along y - x while they keep paying off.
    while (evals < budget) {
      std::vector<double> z(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) z[i] = param.clamp(i, 2.0 * y[i] - x[i]);
      x = y;
      fx = fy;
      const double fz = eval(z);
      auto [w, fw] = explore(z, fz, step);
      if (!(fw > fx)) break;
      y = std::move(w);
      fy = fw;
    }
  }
  return {x, fx, evals, evals >= budget};
}

// Steepest ascent on central-difference gradients with backtracking; only
// improving steps are taken.
SearchResult finite_difference_polish(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> x, double fx, const Parameterization& param) {
  std::size_t evals = 0;
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> grad(x.size());
    double gnorm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[i]));
      std::vector<double> up = x, dn = x;
      up[i] = param.clamp(i, x[i] + h);
      dn[i] = param.clamp(i, x[i] - h);
      const double fu = f(up), fd = f(dn);
      evals += 2;
      if (!std::isfinite(fu) || !std::isfinite(fd) || up[i] == dn[i]) {
        grad[i] = 0.0;
        continue;
      }
      grad[i] = (fu - fd) / (up[i] - dn[i]);
      gnorm += grad[i] * grad[i];
    }
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0)) break;
    bool improved = false;
    for (double step = 1e-3; step > 1e-12; step *= 0.25) {
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = param.clamp(i, x[i] + step * grad[i] / gnorm);
      const double fy = f(y);
      ++evals;
      if (fy > fx) {
        x = std::move(y);
        fx = fy;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {x, fx, evals, false};
}

// Scales (alpha, r) toward the origin until the gain constraint is strict.
std::optional<Params> make_feasible(Params x, double g0, const Bounds& b) {
  for (int k = 0; k < 80; ++k) {
    x[0] = std::clamp(x[0], b.alpha_min, b.alpha_max);
    for (int i = 1; i < 4; ++i) x[i] = std::clamp(x[i], b.r_min, b.r_max);
    const Evaluation e = evaluate(x);
    if (e.g > g0 && e.p > 0.0) return x;
    for (auto& v : x) v *= 0.5;
  }
  return std::nullopt;
}

struct Candidate {
  Params x;
  double p;
  std::size_t evaluations;
  bool converged;
  std::vector<BarrierStage> trace;
};

// Total order: larger P first, then lexicographically smaller parameters.
bool better(const Candidate& a, const Candidate& b) {
  if (a.p != b.p) return a.p > b.p;
  return a.x < b.x;
}

Candidate solve_from(const Params& start, const OptProblem& problem, const OptSettings& settings,
                     const Parameterization& param) {
  const double g0 = problem.g_eff0;
  std::vector<double> v = param.reduce(start);
  Candidate c{param.expand(v), 0.0, 0, true, {}};
  double mu = settings.mu0;
  for (int k = 0; k < settings.barrier_stages; ++k, mu *= settings.mu_factor) {
    auto objective = [&](const std::vector<double>& y) {
      const Evaluation e = evaluate(param.expand(y));
      const double slack = e.g - g0;
      if (!(slack > 0.0) || !(e.p > 0.0)) return kMinusInf;
      return std::log(e.p) + mu * std::log(slack);
    };
    const SearchResult r = pattern_search(objective, v, param, settings.initial_step, settings.step_floor,
                                          settings.max_evaluations);
    const SearchResult polished = finite_difference_polish(objective, r.x, r.f, param);
    v = polished.x;
    c.evaluations += r.evaluations + polished.evaluations;
    if (r.budget_exhausted) c.converged = false;
    const double log_p = std::log(evaluate(param.expand(v)).p);
    if (!c.trace.empty() && log_p < c.trace.back().log_p - 1e-9 * std::max(1.0, std::abs(log_p))) {
      c.converged = false;
    }
    c.trace.push_back({mu, log_p});
  }
  c.x = param.expand(v);
  c.p = evaluate(c.x).p;
  return c;
}

}  // namespace

std::vector<Params> default_starts() {
  std::vector<Params> starts;
  for (const double a : {0.2, 0.5, 0.8})
    for (const double r : {0.1, 0.3, 0.45}) starts.push_back({a, r, r, r});
  return starts;
}

OptResult maximize(const OptProblem& problem, const OptSettings& settings) {
  const Bounds& b = problem.bounds;
  if (!(problem.g_eff0 < 2.0)) throw Infeasible("g_eff0 must be below the nominal gain 2");
  if (!(b.alpha_min > 0.0 && b.alpha_min < b.alpha_max && b.r_min >= 0.0 && b.r_min < b.r_max && b.r_max < 1.0)) {
    throw ConfigError("invalid optimizer bounds");
  }
  const Parameterization param(settings.symmetric, b);

  std::vector<Params> starts = settings.starts.empty() ? default_starts() : settings.starts;
  if (settings.warm_start) starts.push_back(*settings.warm_start);

  std::optional<Candidate> best;
  std::size_t total_evals = 0;
  for (const Params& s : starts) {
    const auto feasible = make_feasible(s, problem.g_eff0, b);
    if (!feasible) continue;
    Candidate c = solve_from(*feasible, problem, settings, param);
    total_evals += c.evaluations;
    if (!best || better(c, *best)) best = std::move(c);
  }
  if (!best) throw Infeasible("no start satisfies g_eff >= " + std::to_string(problem.g_eff0));

  OptResult out;
  out.g_eff0 = problem.g_eff0;
  out.p_opt = best->p;
  out.alpha_opt = best->x[0];
  out.r_opt = {best->x[1], best->x[2], best->x[3]};
  out.g_opt = evaluate(best->x).g;
  out.slack = out.g_opt - problem.g_eff0;
  out.converged = best->converged;
  out.iterations = total_evals;
  out.barrier_trace = std::move(best->trace);

  SchemeConfig cfg;
  cfg.alpha = out.alpha_opt;
  cfg.r1 = out.r_opt[0];
  cfg.r2 = out.r_opt[1];
  cfg.r3 = out.r_opt[2];
  cfg.dim = settings.fidelity_dim;
  out.f_opt = run_branch(cfg, kSuccessOutcome).fidelity_eff;
  return out;
}

std::vector<OptResult> sweep(const std::vector<double>& g_eff0, const OptSettings& settings, const Bounds& bounds) {
  if (!std::is_sorted(g_eff0.begin(), g_eff0.end())) throw ConfigError("g_eff0 list must be ascending");
  std::vector<OptResult> results;
  std::optional<Params> previous;
  for (const double g0 : g_eff0) {
    OptSettings s = settings;
    if (previous) s.warm_start = previous;
    try {
      OptResult r = maximize({g0, bounds}, s);
      previous = Params{r.alpha_opt, r.r_opt[0], r.r_opt[1], r.r_opt[2]};
      results.push_back(std::move(r));
    } catch (const Error& e) {
      OptResult failed;
      failed.g_eff0 = g0;
      failed.error = e.what();
      results.push_back(std::move(failed));
    }
  }
  return results;
}

double verify_symmetry(const OptResult& result) {
  const auto& r = result.r_opt;
  return std::max({std::abs(r[0] - r[1]), std::abs(r[0] - r[2]), std::abs(r[1] - r[2])});
}

}  // namespace fluctamp
