#include "fluctamp/modes.hpp"

#include <cmath>
#include <string>

#include "fluctamp/errors.hpp"

namespace fluctamp {

TwoModeState::TwoModeState(std::size_t d1, std::size_t d2) : d1_(d1), d2_(d2), amps_(d1 * d2) {
  if (d1 == 0 || d2 == 0) throw IndexError("TwoModeState dimensions must be >= 1");
}

double TwoModeState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amps_) s += std::norm(c);
  return s;
}

double TwoModeState::mean_total_photons() const {
  double s = 0.0;
  for (std::size_t m = 0; m < d1_; ++m)
    for (std::size_t n = 0; n < d2_; ++n) s += static_cast<double>(m + n) * std::norm((*this)(m, n));
  return s / norm_squared();
}

complex TwoModeState::mean_a(int mode) const {
  complex s = 0.0;
  for (std::size_t m = 0; m < d1_; ++m) {
    for (std::size_t n = 0; n < d2_; ++n) {
      if (mode == 1 && m + 1 < d1_) {
        s += std::conj((*this)(m, n)) * std::sqrt(static_cast<double>(m + 1)) * (*this)(m + 1, n);
      } else if (mode == 2 && n + 1 < d2_) {
        s += std::conj((*this)(m, n)) * std::sqrt(static_cast<double>(n + 1)) * (*this)(m, n + 1);
      }
    }
  }
  return s / norm_squared();
}

BeamSplitter::BeamSplitter(double r) : r_(r), t_(std::sqrt(1.0 - r * r)) {
  if (!(std::abs(r) < 1.0)) throw Error("BeamSplitter: |r| must be < 1");
}

TwoModeState tensor(const FockState& mode1, const FockState& mode2) {
  TwoModeState out(mode1.dim(), mode2.dim());
  for (std::size_t m = 0; m < mode1.dim(); ++m)
    for (std::size_t n = 0; n < mode2.dim(); ++n) out(m, n) = mode1[m] * mode2[n];
  return out;
}

namespace {

// Image of |m, n> under the beam splitter, expressed in the N = m + n block
// as coefficients over |p, N - p>, p = 0..N. Built from
//   U a1^dag U^dag = t b1^dag + r b2^dag,   U a2^dag U^dag = -r b1^dag + t b2^dag
// applied one photon at a time, so every column stays unit-norm.
class BlockColumns {
 public:
  BlockColumns(std::size_t d1, std::size_t d2, double r, double t) : d1_(d1), d2_(d2) {
    cols_.resize(d1 * d2);
    cols_[0] = {1.0};
    for (std::size_t n = 1; n < d2; ++n) cols_[n] = raise(cols_[n - 1], -r, t, n);
    for (std::size_t m = 1; m < d1; ++m)
      for (std::size_t n = 0; n < d2; ++n) cols_[m * d2 + n] = raise(cols_[(m - 1) * d2 + n], t, r, m);
  }

  const std::vector<double>& operator()(std::size_t m, std::size_t n) const { return cols_[m * d2_ + n]; }

 private:
  // (c1 b1^dag + c2 b2^dag) / sqrt(k) applied to a block-N column.
  static std::vector<double> raise(const std::vector<double>& in, double c1, double c2, std::size_t k) {
    const std::size_t N = in.size() - 1;
    std::vector<double> out(N + 2, 0.0);
    const double inv = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t p = 0; p <= N; ++p) {
      const std::size_t q = N - p;
      out[p + 1] += c1 * std::sqrt(static_cast<double>(p + 1)) * in[p] * inv;
      out[p] += c2 * std::sqrt(static_cast<double>(q + 1)) * in[p] * inv;
    }
    return out;
  }

  std::size_t d1_, d2_;
  std::vector<std::vector<double>> cols_;
};

}  // namespace

TwoModeState apply_beam_splitter(const TwoModeState& state, const BeamSplitter& bs) {
  const std::size_t d1 = state.d1(), d2 = state.d2();
  const BlockColumns cols(d1, d2, bs.r(), bs.t());
  TwoModeState out(d1, d2);
  for (std::size_t m = 0; m < d1; ++m) {
    for (std::size_t n = 0; n < d2; ++n) {
      const complex c = state(m, n);
      if (c == 0.0) continue;
      const auto& col = cols(m, n);
      const std::size_t N = m + n;
      for (std::size_t p = 0; p <= N; ++p) {
        const std::size_t q = N - p;
        if (p < d1 && q < d2) out(p, q) += col[p] * c;
      }
    }
  }
  // The map is unitary on the untruncated space, so the norm deficit is
  // exactly the mass scattered out of the window.
  const double total = state.norm_squared();
  const double lost = total - out.norm_squared();
  if (total > 0.0 && lost / total > kTruncationTolerance) {
    throw TruncationError("apply_beam_splitter: mass " + std::to_string(lost / total) +
                          " leaves the truncated window");
  }
  return out;
}

Projection project_mode2(const TwoModeState& state, std::size_t n) {
  if (n >= state.d2()) {
    throw IndexError("project_mode2: n=" + std::to_string(n) + " outside d2=" + std::to_string(state.d2()));
  }
  FockState slice(state.d1());
  double p = 0.0;
  for (std::size_t m = 0; m < state.d1(); ++m) {
    slice[m] = state(m, n);
    p += std::norm(slice[m]);
  }
  if (!(p >= 1e-300)) throw ZeroProbability("project_mode2: outcome n=" + std::to_string(n) + " has zero probability");
  const double scale = 1.0 / std::sqrt(p);
  for (auto& c : slice.amps()) c *= scale;
  return {p, std::move(slice)};
}

}  // namespace fluctamp
