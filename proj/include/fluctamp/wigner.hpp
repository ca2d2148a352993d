#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "fluctamp/fock.hpp"

namespace fluctamp {

/// Rectangular quadrature grid, inclusive bounds. hbar = kappa = 1.
struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  std::size_t nx = 241;
  std::size_t np = 241;

  double x(std::size_t i) const;
  double p(std::size_t j) const;
  double dx() const;
  double dp() const;

  bool operator==(const GridSpec&) const = default;
};

/// Throws ConfigError unless the bounds are ordered and both counts >= 2.
void validate(const GridSpec& spec);

/// W(x_i, p_j) stored x-major: values[i * np + j].
struct WignerGrid {
  GridSpec spec;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * spec.np + j]; }
};

/// Largest state dimension accepted by wigner_of_state.
inline constexpr std::size_t kMaxWignerDim = 60;

/// (1/pi) exp[-(x - sqrt2 Re a)^2 - (p - sqrt2 Im a)^2].
WignerGrid wigner_coherent(complex alpha, const GridSpec& spec = {});

/// ((-1)^n / pi) exp(-x^2 - p^2) L_n(2x^2 + 2p^2).
WignerGrid wigner_fock(std::size_t n, const GridSpec& spec = {});

/// Wigner function of a pure state from its Fock amplitudes, using the
/// cross kernels of |m><n| (associated Laguerre form). The state is used as
/// given; callers pass normalized states. Throws TruncationError for
/// dim > kMaxWignerDim.
WignerGrid wigner_of_state(const FockState& state, const GridSpec& spec = {});

/// Trapezoid-rule integral of W over the grid.
double integrate(const WignerGrid& w);

/// 2 pi * integral of W1 W2. Throws GridMismatch.
double fidelity_grid(const WignerGrid& w1, const WignerGrid& w2);

/// <a> from the phase-space moment integral of (x + i p)/sqrt2 against W.
/// The derivative terms of the operator correspondence integrate to boundary
/// values, so they vanish for a contained state; BoundaryMassError is thrown
/// when |W| on the grid edge exceeds 1e-10.
complex expect_a_grid(const WignerGrid& w);

/// Writes the grid as CSV: first line "x_min,x_max,p_min,p_max,nx,np" values,
/// then nx*np lines "x,p,w" (x outer), 17 significant digits.
void export_grid(const WignerGrid& w, const std::filesystem::path& destination);
WignerGrid import_grid(const std::filesystem::path& source);

}  // namespace fluctamp
