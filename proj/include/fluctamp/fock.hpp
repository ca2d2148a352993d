#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fluctamp {

using complex = std::complex<double>;

/// Tail mass above which a truncated coherent state is rejected.
inline constexpr double kTruncationTolerance = 1e-10;

/// Truncated single-mode pure state. amps[n] is the amplitude of |n>;
/// amplitudes at n >= dim() are implicitly zero. Not necessarily normalized.
class FockState {
 public:
  explicit FockState(std::size_t dim);
  explicit FockState(std::vector<complex> amps);

  std::size_t dim() const { return amps_.size(); }
  std::span<const complex> amps() const { return amps_; }
  std::span<complex> amps() { return amps_; }
  const complex& operator[](std::size_t n) const { return amps_[n]; }
  complex& operator[](std::size_t n) { return amps_[n]; }

  /// Sum of |amps[n]|^2.
  double norm_squared() const;
  double norm() const;

  /// Returns a unit-norm copy. Throws ZeroNorm for a null vector.
  FockState normalized() const;

  /// Copy re-sized to `dim`. Shrinking throws TruncationError if the
  /// discarded mass exceeds `tolerance`.
  FockState resized(std::size_t dim, double tolerance = kTruncationTolerance) const;

 private:
  std::vector<complex> amps_;
};

/// Default truncation dimension for a coherent amplitude of modulus alpha_abs:
/// max(20, ceil(|a|^2 + 8|a| + 12)).
std::size_t default_dim(double alpha_abs);

/// Exact tail mass sum_{n >= dim} e^{-|a|^2} |a|^{2n}/n! of a coherent state.
double coherent_tail_mass(double alpha_abs, std::size_t dim);

/// Normalized truncated coherent state |alpha>. Throws TruncationError when
/// the discarded tail exceeds kTruncationTolerance.
FockState coherent_state(complex alpha, std::size_t dim);

/// Number state |n>. Throws IndexError if n >= dim.
FockState fock_state(std::size_t n, std::size_t dim);

/// a|psi>, unnormalized. The top component is set to zero.
FockState annihilate(const FockState& state);

/// a^dagger|psi>, unnormalized, same dimension. Throws TruncationError when
/// the top amplitude is not negligible.
FockState create(const FockState& state);

/// <a|b>. Throws DimensionMismatch.
complex inner_product(const FockState& a, const FockState& b);

/// |<a|b>|^2 / (|a|^2 |b|^2), tolerating different dimensions.
double overlap_fidelity(const FockState& a, const FockState& b);

struct StateMetrics {
  complex mean_a;  // <a>
  double mean_n;   // <n>
  double norm;
};

/// Expectation values relative to the state's own norm. Throws ZeroNorm.
StateMetrics metrics(const FockState& state);

}  // namespace fluctamp
