#include "fluctamp/analytic.hpp"

#include <cmath>

#include "fluctamp/errors.hpp"

namespace fluctamp {

namespace {
double transmissivity(double r) { return std::sqrt(1.0 - r * r); }
}  // namespace

double SplitterTriple::t1() const { return transmissivity(r1); }
double SplitterTriple::t2() const { return transmissivity(r2); }
double SplitterTriple::t3() const { return transmissivity(r3); }
double SplitterTriple::T() const { return t1() * t2() * t3(); }
double SplitterTriple::R() const { return r1 * r2 * r3; }

double p_succ_closed(double alpha_abs, const SplitterTriple& s) {
  const double a2 = alpha_abs * alpha_abs;
  const double x = s.T() * s.T() * a2;  // |T a|^2
  const double R = s.R();
  return (1.0 + x * (3.0 + x)) * R * R * a2 * std::exp(x - a2);
}

double g_eff_closed(double alpha_abs, const SplitterTriple& s) {
  const double T = s.T();
  const double x = T * T * alpha_abs * alpha_abs;
  return T * (2.0 + 4.0 * x + x * x) / (1.0 + 3.0 * x + x * x);
}

ClosedFidelity f_eff_closed(double alpha_abs, const SplitterTriple& s, double g_eff, FidelityForm form) {
  const double T = s.T();
  const double a2 = alpha_abs * alpha_abs;
  const double x = T * T * a2;
  const double numerator = 1.0 + 2.0 * g_eff * T * a2 + g_eff * g_eff * T * T * a2 * a2;
  const bool printed = form == FidelityForm::AsPrinted;
  const double shift = printed ? g_eff * g_eff - T : g_eff - T;
  const double value = numerator * std::exp(-shift * shift * a2) / (1.0 + 3.0 * x + x * x);
  return {value, printed};
}

double detector_adjusted(double p, double eta_qnd, double eta_pd1, double eta_pd2) {
  for (const double eta : {eta_qnd, eta_pd1, eta_pd2}) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("detector efficiency must lie in [0, 1]");
  }
  return p * eta_qnd * eta_pd1 * eta_pd2;
}

}  // namespace fluctamp
