#pragma once

// Closed-form predictions for the subtract/add/subtract amplifier. These
// functions do not touch the Fock-space simulator, so the two can be used to
// check each other.

namespace fluctamp {

/// Reflectivities of the three beam splitters, each in [0, 1).
struct SplitterTriple {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  static SplitterTriple uniform(double r) { return {r, r, r}; }

  double t1() const;
  double t2() const;
  double t3() const;
  /// t1 t2 t3
  double T() const;
  /// r1 r2 r3
  double R() const;
};

/// Heralded success probability of the (QND, PD1, PD2) = (1, 0, 1) outcome:
/// (1 + |Ta|^2 (3 + |Ta|^2)) |Ra|^2 exp(|Ta|^2 - |a|^2).
double p_succ_closed(double alpha_abs, const SplitterTriple& s);

/// Effective gain |<a_out>| / |<a_in>| of the success branch:
/// T (2 + 4|Ta|^2 + |Ta|^4) / (1 + 3|Ta|^2 + |Ta|^4).
double g_eff_closed(double alpha_abs, const SplitterTriple& s);

enum class FidelityForm {
  /// Exponent exp(-(g^2 - T)^2 |a|^2), as the formula was originally typeset.
  AsPrinted,
  /// Exponent exp(-(g - T)^2 |a|^2); agrees with the simulated overlap.
  Corrected,
};

struct ClosedFidelity {
  double value;
  bool as_printed;
};

/// Fidelity of the success-branch output with the coherent state |g_eff a>.
/// Reporting only: the simulated overlap is the reference value.
ClosedFidelity f_eff_closed(double alpha_abs, const SplitterTriple& s, double g_eff,
                            FidelityForm form = FidelityForm::AsPrinted);

/// Success probability scaled by the QND and photodetector efficiencies.
/// Throws ConfigError if any efficiency lies outside [0, 1].
double detector_adjusted(double p, double eta_qnd, double eta_pd1, double eta_pd2);

}  // namespace fluctamp
