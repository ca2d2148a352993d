#include "fluctamp/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluctamp/errors.hpp"

namespace fluctamp {

FockState::FockState(std::size_t dim) : amps_(dim) {
  if (dim == 0) throw IndexError("FockState dimension must be >= 1");
}

FockState::FockState(std::vector<complex> amps) : amps_(std::move(amps)) {
  if (amps_.empty()) throw IndexError("FockState dimension must be >= 1");
}

double FockState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amps_) s += std::norm(c);
  return s;
}

double FockState::norm() const { return std::sqrt(norm_squared()); }

FockState FockState::normalized() const {
  const double n = norm();
  if (!(n >= 1e-300)) throw ZeroNorm("cannot normalize a null state");
  FockState out(*this);
  for (auto& c : out.amps_) c /= n;
  return out;
}

FockState FockState::resized(std::size_t dim, double tolerance) const {
  if (dim == 0) throw IndexError("FockState dimension must be >= 1");
  double lost = 0.0;
  for (std::size_t n = dim; n < amps_.size(); ++n) lost += std::norm(amps_[n]);
  if (lost > tolerance) {
    throw TruncationError("resizing to dim " + std::to_string(dim) + " discards mass " +
                          std::to_string(lost));
  }
  std::vector<complex> amps(dim);
  std::copy_n(amps_.begin(), std::min(dim, amps_.size()), amps.begin());
  return FockState(std::move(amps));
}

std::size_t default_dim(double alpha_abs) {
  const double a = std::abs(alpha_abs);
  const auto rule = static_cast<std::size_t>(std::ceil(a * a + 8.0 * a + 12.0));
  return std::max<std::size_t>(20, rule);
}

double coherent_tail_mass(double alpha_abs, std::size_t dim) {
  const double x = alpha_abs * alpha_abs;
  if (x == 0.0) return 0.0;
  // Poisson weights by recurrence; log-space start avoids underflow of e^{-x}.
  double log_p = -x;
  for (std::size_t n = 1; n <= dim; ++n) log_p += std::log(x / static_cast<double>(n));
  double p = std::exp(log_p);
  double tail = 0.0;
  for (std::size_t n = dim; n < dim + 100000; ++n) {
    tail += p;
    p *= x / static_cast<double>(n + 1);
    if (n + 1 > x && p < tail * 1e-17) break;
  }
  return tail;
}

FockState coherent_state(complex alpha, std::size_t dim) {
  if (dim == 0) throw IndexError("coherent_state: dim must be >= 1");
  const double tail = coherent_tail_mass(std::abs(alpha), dim);
  if (tail > kTruncationTolerance) {
    throw TruncationError("coherent_state: tail mass " + std::to_string(tail) +
                          " exceeds tolerance at dim " + std::to_string(dim));
  }
  // c_n = c_{n-1} alpha / sqrt(n); unnormalized start, fixed by normalized().
  FockState s(dim);
  s[0] = 1.0;
  for (std::size_t n = 1; n < dim; ++n) s[n] = s[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return s.normalized();
}

FockState fock_state(std::size_t n, std::size_t dim) {
  if (n >= dim) {
    throw IndexError("fock_state: n=" + std::to_string(n) + " outside dim " + std::to_string(dim));
  }
  FockState s(dim);
  s[n] = 1.0;
  return s;
}

FockState annihilate(const FockState& state) {
  FockState out(state.dim());
  for (std::size_t n = 0; n + 1 < state.dim(); ++n) {
    out[n] = std::sqrt(static_cast<double>(n + 1)) * state[n + 1];
  }
  return out;
}

FockState create(const FockState& state) {
  const std::size_t d = state.dim();
  if (std::abs(state[d - 1]) >= 1e-10) {
    throw TruncationError("create: top Fock component is not negligible");
  }
  FockState out(d);
  for (std::size_t n = 0; n + 1 < d; ++n) {
    out[n + 1] = std::sqrt(static_cast<double>(n + 1)) * state[n];
  }
  return out;
}

complex inner_product(const FockState& a, const FockState& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("inner_product: dims " + std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()));
  }
  complex s = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) s += std::conj(a[n]) * b[n];
  return s;
}

double overlap_fidelity(const FockState& a, const FockState& b) {
  const std::size_t d = std::max(a.dim(), b.dim());
  const FockState pa = a.resized(d), pb = b.resized(d);
  const double na = pa.norm_squared(), nb = pb.norm_squared();
  if (!(na >= 1e-300) || !(nb >= 1e-300)) throw ZeroNorm("overlap_fidelity: null state");
  return std::norm(inner_product(pa, pb)) / (na * nb);
}

StateMetrics metrics(const FockState& state) {
  const double n2 = state.norm_squared();
  if (!(std::sqrt(n2) >= 1e-300)) throw ZeroNorm("metrics: null state");
  complex mean_a = 0.0;
  double mean_n = 0.0;
  for (std::size_t n = 0; n < state.dim(); ++n) {
    mean_n += static_cast<double>(n) * std::norm(state[n]);
    if (n + 1 < state.dim()) {
      mean_a += std::conj(state[n]) * std::sqrt(static_cast<double>(n + 1)) * state[n + 1];
    }
  }
  return {mean_a / n2, mean_n / n2, std::sqrt(n2)};
}

}  // namespace fluctamp
