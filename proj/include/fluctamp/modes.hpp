#pragma once

#include <cstddef>
#include <vector>

#include "fluctamp/fock.hpp"

namespace fluctamp {

/// Two-mode pure state, amps(m, n) with m photons in mode 1 (transmitted
/// path) and n photons in mode 2 (reflected path).
class TwoModeState {
 public:
  TwoModeState(std::size_t d1, std::size_t d2);

  std::size_t d1() const { return d1_; }
  std::size_t d2() const { return d2_; }

  const complex& operator()(std::size_t m, std::size_t n) const { return amps_[m * d2_ + n]; }
  complex& operator()(std::size_t m, std::size_t n) { return amps_[m * d2_ + n]; }

  double norm_squared() const;
  /// <n1 + n2> / norm^2.
  double mean_total_photons() const;
  /// Reduced <a> of mode 1 or mode 2 (mode = 1 or 2).
  complex mean_a(int mode) const;

 private:
  std::size_t d1_, d2_;
  std::vector<complex> amps_;
};

/// Lossless beam splitter with real reflectivity r and t = sqrt(1 - r^2).
/// Negative r is allowed and gives the inverse transformation.
class BeamSplitter {
 public:
  explicit BeamSplitter(double r);
  double r() const { return r_; }
  double t() const { return t_; }

 private:
  double r_, t_;
};

TwoModeState tensor(const FockState& mode1, const FockState& mode2);

/// Applies the beam-splitter unitary. Coherent inputs (a, b) leave as
/// coherent outputs (t a - r b, t b + r a). The output keeps the input
/// dimensions; TruncationError is raised when more than 1e-10 of the
/// (unit-normalized) mass would be scattered out of the d1 x d2 window.
TwoModeState apply_beam_splitter(const TwoModeState& state, const BeamSplitter& bs);

struct Projection {
  double probability;
  FockState collapsed;  // normalized mode-1 state
};

/// Projects mode 2 onto |n>. Probability is the squared norm of the
/// conditional slice (relative to a normalized input).
/// Throws IndexError for n >= d2 and ZeroProbability below 1e-300.
Projection project_mode2(const TwoModeState& state, std::size_t n);

}  // namespace fluctamp
