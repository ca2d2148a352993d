#include <cmath>
#include <random>

#include "doctest.h"
#include "fluctamp/errors.hpp"
#include "fluctamp/modes.hpp"

using namespace fluctamp;

namespace {

TwoModeState random_two_mode(std::mt19937_64& rng, std::size_t d1, std::size_t d2, std::size_t max_total) {
  std::normal_distribution<double> g;
  TwoModeState s(d1, d2);
  double n2 = 0.0;
  for (std::size_t m = 0; m < d1; ++m)
    for (std::size_t n = 0; n < d2; ++n)
      if (m + n <= max_total) {
        s(m, n) = complex(g(rng), g(rng));
        n2 += std::norm(s(m, n));
      }
  const double scale = 1.0 / std::sqrt(n2);
  for (std::size_t m = 0; m < d1; ++m)
    for (std::size_t n = 0; n < d2; ++n) s(m, n) *= scale;
  return s;
}

double product_fidelity(const TwoModeState& s, const FockState& a, const FockState& b) {
  complex ip = 0.0;
  for (std::size_t m = 0; m < s.d1(); ++m)
    for (std::size_t n = 0; n < s.d2(); ++n) ip += std::conj(a[m] * b[n]) * s(m, n);
  return std::norm(ip);
}

}  // namespace

TEST_CASE("BeamSplitter") {
  const BeamSplitter bs(0.4);
  CHECK(std::abs(bs.r() * bs.r() + bs.t() * bs.t() - 1.0) <= 1e-14);
  CHECK_THROWS(BeamSplitter(1.0));
}

TEST_CASE("tensor") {
  const TwoModeState vv = tensor(fock_state(0, 3), fock_state(0, 3));
  CHECK(vv(0, 0) == complex(1.0));
  CHECK(vv.norm_squared() == 1.0);
  CHECK(tensor(fock_state(1, 3), fock_state(0, 3))(1, 0) == complex(1.0));
  const TwoModeState cv = tensor(coherent_state(0.5, 30), fock_state(0, 30));
  CHECK(std::abs(cv.mean_a(1) - complex(0.5)) <= 1e-12);
  CHECK(std::abs(cv.mean_a(2)) <= 1e-15);
}

TEST_CASE("apply_beam_splitter") {
  SUBCASE("coherent and vacuum split into (t alpha, r alpha)") {
    const auto out = apply_beam_splitter(tensor(coherent_state(0.5, 40), fock_state(0, 40)), BeamSplitter(0.4));
    CHECK(std::abs(out.mean_a(1) - complex(std::sqrt(0.84) * 0.5)) <= 1e-10);
    CHECK(std::abs(out.mean_a(2) - complex(0.2)) <= 1e-10);
  }
  SUBCASE("r = 0 is the identity") {
    std::mt19937_64 rng(3);
    const TwoModeState s = random_two_mode(rng, 8, 6, 20);
    const TwoModeState out = apply_beam_splitter(s, BeamSplitter(0.0));
    for (std::size_t m = 0; m < 8; ++m)
      for (std::size_t n = 0; n < 6; ++n) CHECK(std::abs(out(m, n) - s(m, n)) <= 1e-15);
  }
  SUBCASE("unitarity and photon-number conservation on random states") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(-0.95, 0.95);
    for (int k = 0; k < 100; ++k) {
      // Content restricted to m + n < 10 so nothing leaves the 10 x 10 window.
      const TwoModeState s = random_two_mode(rng, 10, 10, 9);
      const TwoModeState out = apply_beam_splitter(s, BeamSplitter(ur(rng)));
      CHECK(std::abs(out.norm_squared() - 1.0) <= 1e-12);
      CHECK(std::abs(out.mean_total_photons() - s.mean_total_photons()) <= 1e-12);
    }
  }
  SUBCASE("BS(r) followed by BS(-r) is the identity") {
    std::mt19937_64 rng(9);
    const TwoModeState s = random_two_mode(rng, 10, 10, 9);
    for (const double r : {0.1, 0.4, 0.8}) {
      const TwoModeState back = apply_beam_splitter(apply_beam_splitter(s, BeamSplitter(r)), BeamSplitter(-r));
      for (std::size_t m = 0; m < 10; ++m)
        for (std::size_t n = 0; n < 10; ++n) CHECK(std::abs(back(m, n) - s(m, n)) <= 1e-12);
    }
  }
  SUBCASE("coherent inputs map to coherent outputs (t a - r b, t b + r a)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ur(0.0, 0.95);
    for (int k = 0; k < 20; ++k) {
      const complex a(u(rng), u(rng)), b(u(rng), u(rng));
      const double r = ur(rng), t = std::sqrt(1.0 - r * r);
      const std::size_t dim = 40;
      const auto out = apply_beam_splitter(tensor(coherent_state(a, dim), coherent_state(b, dim)), BeamSplitter(r));
      const double f = product_fidelity(out, coherent_state(t * a - r * b, dim), coherent_state(t * b + r * a, dim));
      CHECK(f >= 1.0 - 1e-10);
    }
  }
  SUBCASE("mass scattered out of a small window is reported") {
    const TwoModeState s = tensor(fock_state(3, 4), fock_state(3, 4));
    CHECK_THROWS_AS(apply_beam_splitter(s, BeamSplitter(0.5)), TruncationError);
  }
}

TEST_CASE("apply_beam_splitter agrees with a dense matrix exponential") {
  // Oracle: U = exp(theta (a1 a2^dag - a1^dag a2)) by Taylor series on the
  // 6 x 6 two-mode space (content restricted to m + n < 6).
  const std::size_t d = 6, D = d * d;
  const double r = 0.35, theta = std::asin(r);
  std::vector<double> gen(D * D, 0.0);
  auto idx = [&](std::size_t m, std::size_t n) { return m * d + n; };
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      // a1 a2^dag |m,n> = sqrt(m (n+1)) |m-1,n+1>
      if (m > 0 && n + 1 < d) gen[idx(m - 1, n + 1) * D + idx(m, n)] += theta * std::sqrt(m * (n + 1.0));
      // -a1^dag a2 |m,n> = -sqrt((m+1) n) |m+1,n-1>
      if (n > 0 && m + 1 < d) gen[idx(m + 1, n - 1) * D + idx(m, n)] -= theta * std::sqrt((m + 1.0) * n);
    }
  }
  std::vector<double> u(D * D, 0.0), term(D * D, 0.0);
  for (std::size_t i = 0; i < D; ++i) u[i * D + i] = term[i * D + i] = 1.0;
  for (int k = 1; k < 60; ++k) {
    std::vector<double> next(D * D, 0.0);
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t l = 0; l < D; ++l)
        for (std::size_t j = 0; j < D; ++j) next[i * D + j] += gen[i * D + l] * term[l * D + j] / k;
    term = next;
    for (std::size_t i = 0; i < D * D; ++i) u[i] += term[i];
  }
  std::mt19937_64 rng(21);
  const TwoModeState s = random_two_mode(rng, d, d, d - 1);
  const TwoModeState out = apply_beam_splitter(s, BeamSplitter(r));
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      if (m + n >= d) continue;  // blocks cut by the window differ from the truncated generator
      complex expect = 0.0;
      for (std::size_t j = 0; j < D; ++j) expect += u[idx(m, n) * D + j] * s(j / d, j % d);
      CHECK(std::abs(out(m, n) - expect) <= 1e-12);
    }
  }
}

TEST_CASE("project_mode2") {
  const auto split = apply_beam_splitter(tensor(coherent_state(0.5, 30), fock_state(0, 30)), BeamSplitter(0.4));
  SUBCASE("no click on the reflected arm") {
    const Projection p = project_mode2(split, 0);
    CHECK(std::abs(p.probability - std::exp(-0.04)) <= 1e-12);
    const double f = std::norm(inner_product(coherent_state(std::sqrt(0.84) * 0.5, 30), p.collapsed));
    CHECK(f >= 1.0 - 1e-12);
  }
  SUBCASE("completeness") {
    double total = 0.0;
    for (std::size_t n = 0; n < split.d2(); ++n) {
      try {
        total += project_mode2(split, n).probability;
      } catch (const ZeroProbability&) {
      }
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  SUBCASE("single photon reflects with amplitude r") {
    const auto s = apply_beam_splitter(tensor(fock_state(1, 4), fock_state(0, 4)), BeamSplitter(0.4));
    const Projection p = project_mode2(s, 1);
    CHECK(p.probability == doctest::Approx(0.16).epsilon(1e-12));
    CHECK(std::norm(p.collapsed[0]) == doctest::Approx(1.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(project_mode2(split, 30), IndexError);
    CHECK_THROWS_AS(project_mode2(tensor(fock_state(0, 3), fock_state(0, 3)), 1), ZeroProbability);
  }
}
