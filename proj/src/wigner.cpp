#include "fluctamp/wigner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "fluctamp/errors.hpp"
#include "fluctamp/format.hpp"

namespace fluctamp {

using std::numbers::pi;

double GridSpec::x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
double GridSpec::p(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }
double GridSpec::dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
double GridSpec::dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }

void validate(const GridSpec& s) {
  if (!(s.x_max > s.x_min) || !(s.p_max > s.p_min) || s.nx < 2 || s.np < 2) {
    throw ConfigError("grid spec needs x_min < x_max, p_min < p_max and nx, np >= 2");
  }
}

namespace {

template <typename F>
WignerGrid tabulate(const GridSpec& spec, F&& f) {
  validate(spec);
  WignerGrid w{spec, std::vector<double>(spec.nx * spec.np)};
  for (std::size_t i = 0; i < spec.nx; ++i)
    for (std::size_t j = 0; j < spec.np; ++j) w.values[i * spec.np + j] = f(spec.x(i), spec.p(j));
  return w;
}

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

template <typename F>
auto trapezoid(const GridSpec& s, F&& f) {
  decltype(f(std::size_t{}, std::size_t{})) sum{};
  for (std::size_t i = 0; i < s.nx; ++i) {
    decltype(sum) row{};
    for (std::size_t j = 0; j < s.np; ++j) row += trapezoid_weight(j, s.np) * f(i, j);
    sum += trapezoid_weight(i, s.nx) * row;
  }
  return sum * (s.dx() * s.dp());
}

}  // namespace

WignerGrid wigner_coherent(complex alpha, const GridSpec& spec) {
  const double x0 = std::sqrt(2.0) * alpha.real();
  const double p0 = std::sqrt(2.0) * alpha.imag();
  return tabulate(spec, [&](double x, double p) {
    return std::exp(-(x - x0) * (x - x0) - (p - p0) * (p - p0)) / pi;
  });
}

WignerGrid wigner_fock(std::size_t n, const GridSpec& spec) {
  return tabulate(spec, [&](double x, double p) {
    const double y = 2.0 * (x * x + p * p);
    double prev = 0.0, cur = 1.0;  // L_{-1}, L_0
    for (std::size_t k = 0; k < n; ++k) {
      const double next = ((2.0 * k + 1.0 - y) * cur - k * prev) / (k + 1.0);
      prev = cur;
      cur = next;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / pi * std::exp(-0.5 * y) * cur;
  });
}

WignerGrid wigner_of_state(const FockState& state, const GridSpec& spec) {
  const std::size_t d = state.dim();
  if (d > kMaxWignerDim) {
    throw TruncationError("wigner_of_state: dim " + std::to_string(d) + " exceeds cap " +
                          std::to_string(kMaxWignerDim));
  }
  const auto c = state.amps();
  std::vector<double> laguerre(d);
  return tabulate(spec, [&](double x, double p) {
    // Kernel of |n+k><n|: (-1)^n sqrt(n!/(n+k)!) (sqrt2 (x - ip))^k e^{-r^2} L_n^{(k)}(2 r^2) / pi.
    const double y = 2.0 * (x * x + p * p);
    const complex zbar(std::sqrt(2.0) * x, -std::sqrt(2.0) * p);
    complex zpow = 1.0;       // zbar^k
    double inv_sqrt_kfact = 1.0;  // 1/sqrt(k!)
    double total = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (k > 0) {
        zpow *= zbar;
        inv_sqrt_kfact /= std::sqrt(static_cast<double>(k));
      }
      const std::size_t count = d - k;
      const double kk = static_cast<double>(k);
      laguerre[0] = 1.0;
      if (count > 1) laguerre[1] = 1.0 + kk - y;
      for (std::size_t n = 1; n + 1 < count; ++n) {
        const double nn = static_cast<double>(n);
        laguerre[n + 1] = ((2.0 * nn + 1.0 + kk - y) * laguerre[n] - (nn + kk) * laguerre[n - 1]) / (nn + 1.0);
      }
      complex block = 0.0;
      double ratio = inv_sqrt_kfact;  // sqrt(n!/(n+k)!)
      for (std::size_t n = 0; n < count; ++n) {
        if (n > 0) ratio *= std::sqrt(static_cast<double>(n) / static_cast<double>(n + k));
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        block += c[n + k] * std::conj(c[n]) * (sign * ratio * laguerre[n]);
      }
      const double contribution = (block * zpow).real();
      total += (k == 0) ? contribution : 2.0 * contribution;
    }
    return total * std::exp(-0.5 * y) / pi;
  });
}

double integrate(const WignerGrid& w) {
  return trapezoid(w.spec, [&](std::size_t i, std::size_t j) { return w.at(i, j); });
}

double fidelity_grid(const WignerGrid& w1, const WignerGrid& w2) {
  if (!(w1.spec == w2.spec) || w1.values.size() != w2.values.size()) {
    throw GridMismatch("fidelity_grid: grids differ");
  }
  return 2.0 * pi * trapezoid(w1.spec, [&](std::size_t i, std::size_t j) { return w1.at(i, j) * w2.at(i, j); });
}

complex expect_a_grid(const WignerGrid& w) {
  const auto& s = w.spec;
  double edge = 0.0;
  for (std::size_t i = 0; i < s.nx; ++i) edge = std::max({edge, std::abs(w.at(i, 0)), std::abs(w.at(i, s.np - 1))});
  for (std::size_t j = 0; j < s.np; ++j) edge = std::max({edge, std::abs(w.at(0, j)), std::abs(w.at(s.nx - 1, j))});
  if (edge > 1e-10) {
    throw BoundaryMassError("expect_a_grid: |W| on the grid edge is " + std::to_string(edge));
  }
  return trapezoid(s, [&](std::size_t i, std::size_t j) {
    return complex(s.x(i), s.p(j)) * (w.at(i, j) / std::sqrt(2.0));
  });
}

void export_grid(const WignerGrid& w, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw IoError("cannot open " + destination.string() + " for writing");
  const auto& s = w.spec;
  out << format_double(s.x_min) << ',' << format_double(s.x_max) << ',' << format_double(s.p_min) << ','
      << format_double(s.p_max) << ',' << s.nx << ',' << s.np << '\n';
  for (std::size_t i = 0; i < s.nx; ++i) {
    for (std::size_t j = 0; j < s.np; ++j) {
      out << format_double(s.x(i)) << ',' << format_double(s.p(j)) << ',' << format_double(w.at(i, j)) << '\n';
    }
  }
  if (!out) throw IoError("write failed: " + destination.string());
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

WignerGrid import_grid(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw IoError("cannot open " + source.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty grid file " + source.string());
  const auto head = split_csv(line);
  if (head.size() != 6) throw IoError("malformed grid header in " + source.string());
  GridSpec s{parse_double(head[0]), parse_double(head[1]), parse_double(head[2]),
             parse_double(head[3]), parse_size(head[4]), parse_size(head[5])};
  validate(s);
  WignerGrid w{s, std::vector<double>(s.nx * s.np)};
  for (std::size_t k = 0; k < s.nx * s.np; ++k) {
    if (!std::getline(in, line)) throw IoError("grid file truncated: " + source.string());
    const auto row = split_csv(line);
    if (row.size() != 3) throw IoError("malformed grid row in " + source.string());
    w.values[k] = parse_double(row[2]);
  }
  return w;
}

}  // namespace fluctamp
