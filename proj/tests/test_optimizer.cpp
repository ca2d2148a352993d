#include <algorithm>
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "fluctamp/analytic.hpp"
#include "fluctamp/errors.hpp"
#include "fluctamp/optimizer.hpp"

using namespace fluctamp;

TEST_CASE("default_starts") {
  const auto s = default_starts();
  CHECK(s.size() == 9);
  CHECK(s.front() == Params{0.2, 0.1, 0.1, 0.1});
  CHECK(s.back() == Params{0.8, 0.45, 0.45, 0.45});
}

TEST_CASE("maximize at g_eff0 = 1.4") {
  const OptResult r = maximize({1.4});
  CHECK(r.converged);
  CHECK(r.p_opt == doctest::Approx(1e-3).epsilon(0.15));
  CHECK(std::abs(r.alpha_opt - 0.51) <= 0.01);
  for (const double ri : r.r_opt) CHECK(std::abs(ri - 0.38) <= 0.01);
  CHECK(verify_symmetry(r) < 1e-4);
  CHECK(r.g_opt >= 1.4 - 1e-8);
  CHECK(r.slack >= 0.0);
  CHECK(r.slack < 1e-5);  // constraint active
  CHECK(r.p_opt == doctest::Approx(p_succ_closed(r.alpha_opt, {r.r_opt[0], r.r_opt[1], r.r_opt[2]})));
  CHECK(r.f_opt > 0.99);
  CHECK(r.f_opt < 1.0);

  SUBCASE("barrier trace") {
    REQUIRE(r.barrier_trace.size() == 10);
    CHECK(r.barrier_trace[0].mu == doctest::Approx(10.0));
    CHECK(r.barrier_trace[9].mu == doctest::Approx(10.0 * std::pow(0.2, 9)));
    for (std::size_t k = 1; k < r.barrier_trace.size(); ++k) {
      CHECK(r.barrier_trace[k].log_p >= r.barrier_trace[k - 1].log_p - 1e-9);
    }
  }
}

TEST_CASE("symmetric two-variable problem matches the four-variable optimum") {
  for (const double g0 : {1.1, 1.4, 1.8}) {
    OptSettings s;
    const OptResult full = maximize({g0}, s);
    s.symmetric = true;
    const OptResult sym = maximize({g0}, s);
    CHECK(std::abs(full.p_opt - sym.p_opt) <= 1e-8);
    CHECK(verify_symmetry(sym) == 0.0);
  }
}

TEST_CASE("permutation symmetry of the optimum") {
  OptSettings s;
  s.starts = {{0.5, 0.1, 0.3, 0.45}};
  const OptResult a = maximize({1.4}, s);
  s.starts = {{0.5, 0.45, 0.1, 0.3}};
  const OptResult b = maximize({1.4}, s);
  CHECK(std::abs(a.p_opt - b.p_opt) <= 1e-10);
  CHECK(verify_symmetry(a) < 1e-4);
}

TEST_CASE("asymmetric splitters with the same T give a lower success probability") {
  const double t = 0.9, T = t * t * t;
  const OptResult sym = maximize({1.4});
  const double a = 0.5;
  const double p_sym = p_succ_closed(a, SplitterTriple::uniform(std::sqrt(1.0 - t * t)));
  for (const double t1 : {0.85, 0.95, 0.97}) {
    const double t2 = std::sqrt(T / t1);
    const double r1 = std::sqrt(1.0 - t1 * t1), r2 = std::sqrt(1.0 - t2 * t2);
    const SplitterTriple asym{r1, r2, r2};
    CHECK(asym.T() == doctest::Approx(T).epsilon(1e-14));
    CHECK(g_eff_closed(a, asym) == doctest::Approx(g_eff_closed(a, SplitterTriple::uniform(std::sqrt(1 - t * t)))));
    CHECK(p_succ_closed(a, asym) < p_sym);
  }
  // A feasible asymmetric point never beats the solver's symmetric optimum.
  const SplitterTriple asym{0.30, 0.42, 0.40};
  if (g_eff_closed(0.5, asym) >= 1.4) CHECK(p_succ_closed(0.5, asym) < sym.p_opt);
}

TEST_CASE("determinism") {
  const OptResult a = maximize({1.25}), b = maximize({1.25});
  CHECK(std::memcmp(&a.p_opt, &b.p_opt, sizeof(double)) == 0);
  CHECK(a.alpha_opt == b.alpha_opt);
  CHECK(a.r_opt == b.r_opt);
  CHECK(a.f_opt == b.f_opt);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("near the nominal gain") {
  const OptResult r = maximize({1.95});
  CHECK(r.converged);
  CHECK(r.g_opt >= 1.95 - 1e-8);
  CHECK(r.r_opt[0] < 0.15);
  CHECK(r.f_opt > 0.9999);
}

TEST_CASE("infeasible and invalid problems") {
  CHECK_THROWS_AS(maximize({2.0}), Infeasible);
  CHECK_THROWS_AS(maximize({2.5}), Infeasible);
  OptProblem bad{1.4};
  bad.bounds.r_max = 1.0;
  CHECK_THROWS_AS(maximize(bad), ConfigError);
}

TEST_CASE("sweep") {
  std::vector<double> g;
  for (int k = 0; k <= 18; ++k) g.push_back(1.05 + 0.05 * k);
  const auto results = sweep(g);
  REQUIRE(results.size() == g.size());
  for (std::size_t k = 0; k < results.size(); ++k) {
    CHECK(results[k].error.empty());
    CHECK(results[k].converged);
    CHECK(results[k].g_opt >= g[k] - 1e-8);
    CHECK(verify_symmetry(results[k]) < 1e-4);
    if (k > 0) CHECK(results[k].p_opt < results[k - 1].p_opt);
    if (g[k] >= 1.15) CHECK(results[k].alpha_opt < 1.0);
  }
  CHECK(results.back().f_opt > 0.9999);
  CHECK_THROWS_AS(sweep({1.4, 1.2}), ConfigError);

  const auto with_failure = sweep({1.4, 2.0});
  CHECK(with_failure[0].error.empty());
  CHECK_FALSE(with_failure[1].error.empty());
  CHECK_FALSE(with_failure[1].converged);
}
