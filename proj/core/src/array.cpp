// SPDX-License-Identifier: Apache-2.0

#include "csb/array.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "csb/csv.hpp"

namespace csb {

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const cplx& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

namespace {

void check_dimension(int n, const char* what) {
  if (n < 1) throw ConfigError(std::string(what) + " must be positive");
  if (n > 1 && n % 2 != 0) throw ConfigError(std::string(what) + " must be even (or 1 for a linear array)");
}

// Tolerance, in units of one quantization level, under which a phase is
// treated as lying exactly halfway between two levels.
constexpr double kTieTolerance = 1e-9;

}  // namespace

ArrayConfig ArrayConfig::square(int n_t, int q) { return ArrayConfig{n_t, n_t, q}; }

ArrayConfig ArrayConfig::linear(int n_t, int q) { return ArrayConfig{1, n_t, q}; }

void ArrayConfig::validate() const {
  check_dimension(rows, "array rows");
  check_dimension(cols, "array cols");
  if (elements() < 2) throw ConfigError("array needs at least two elements");
  if (q < 0 || q > 16) throw ConfigError("phase-shifter resolution q must be in [1,16] or unquantized");
}

double ArrayConfig::element_amplitude() const { return 1.0 / std::sqrt(static_cast<double>(elements())); }

int signed_index(int idx, int n) {
  const int r = mod(idx, n);
  return r <= n / 2 ? r : r - n;
}

double grid_angle(int idx, int n) {
  if (n == 1) return 0.0;
  return std::asin(2.0 * signed_index(idx, n) / n);
}

Angles grid_angles(const GridIndex& g, const ArrayConfig& cfg) {
  return {grid_angle(g.i, cfg.cols), grid_angle(g.j, cfg.rows)};
}

GridIndex nearest_grid(const Angles& a, const ArrayConfig& cfg) {
  const auto snap = [](double angle, int n) {
    return mod(static_cast<int>(std::lround(0.5 * n * std::sin(angle))), n);
  };
  return {snap(a.theta, cfg.cols), snap(a.phi, cfg.rows)};
}

std::vector<cplx> steering_vector(double theta, int n) {
  std::vector<cplx> a(static_cast<std::size_t>(n));
  const double s = std::sin(theta);
  for (int k = 0; k < n; ++k) a[k] = std::polar(1.0, -kPi * k * s);
  return a;
}

CMatrix array_response(double theta, double phi, int rows, int cols) {
  const auto a_phi = steering_vector(phi, rows);
  const auto a_theta = steering_vector(theta, cols);
  CMatrix v(rows, cols);
  for (int k = 0; k < rows; ++k)
    for (int l = 0; l < cols; ++l) v(k, l) = a_phi[k] * a_theta[l];
  return v;
}

CMatrix array_response(const Angles& a, const ArrayConfig& cfg) {
  return array_response(a.theta, a.phi, cfg.rows, cfg.cols);
}

CMatrix grid_response(const GridIndex& g, const ArrayConfig& cfg) {
  const long long period = static_cast<long long>(cfg.rows) * cfg.cols;
  CMatrix v(cfg.rows, cfg.cols);
  for (int k = 0; k < cfg.rows; ++k) {
    for (int l = 0; l < cfg.cols; ++l) {
      const long long p = -(static_cast<long long>(g.j) * k * cfg.cols + static_cast<long long>(g.i) * l * cfg.rows);
      const long long r = ((p % period) + period) % period;
      v(k, l) = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(period));
    }
  }
  return v;
}

double quantize_phase(double x, int q) {
  if (q == kUnquantized) return x;
  if (q < 1) throw ConfigError("quantize_phase: q must be >= 1");
  const int levels = 1 << q;
  double t = std::fmod(x / kTwoPi * levels, static_cast<double>(levels));
  if (t < 0.0) t += levels;
  if (t >= levels) t -= levels;
  const double lo = std::floor(t);
  const double frac = t - lo;
  int level = static_cast<int>(lo);
  if (frac > 0.5 + kTieTolerance) {
    level += 1;
  } else if (frac >= 0.5 - kTieTolerance) {
    // Midway: pick the smaller phase in [0, 2pi), which is 0 at the seam.
    if (level + 1 == levels) level = levels;
  }
  return kTwoPi * mod(level, levels) / levels;
}

int quantize_level_exact(long long num, long long den, int q) {
  if (q < 1) throw ConfigError("quantize_level_exact: q must be >= 1");
  const long long levels = 1LL << q;
  const long long r = ((num % den) + den) % den;
  const long long scaled = r * levels;
  long long level = scaled / den;
  const long long rem2 = 2 * (scaled % den);
  if (rem2 > den) {
    level += 1;
  } else if (rem2 == den && level + 1 == levels) {
    level = levels;
  }
  return static_cast<int>(level % levels);
}

CMatrix quantized_beamformer(const CMatrix& f, int q) {
  const double amp = 1.0 / std::sqrt(static_cast<double>(f.size()));
  CMatrix out(f.rows(), f.cols());
  for (int k = 0; k < f.rows(); ++k) {
    for (int l = 0; l < f.cols(); ++l) {
      const cplx z = f(k, l);
      if (z == cplx{}) throw ConfigError("quantized_beamformer: zero entry has no phase");
      out(k, l) = std::polar(amp, quantize_phase(std::arg(z), q));
    }
  }
  return out;
}

CMatrix dft_codeword(const CodebookIndex& c, const ArrayConfig& cfg) {
  cfg.validate();
  const long long period = static_cast<long long>(cfg.rows) * cfg.cols;
  const double amp = cfg.element_amplitude();
  const int a = mod(c.a, cfg.rows);
  const int b = mod(c.b, cfg.cols);
  CMatrix f(cfg.rows, cfg.cols);
  for (int k = 0; k < cfg.rows; ++k) {
    for (int l = 0; l < cfg.cols; ++l) {
      const long long p = (static_cast<long long>(a) * k * cfg.cols + static_cast<long long>(b) * l * cfg.rows) % period;
      double phase = 0.0;
      if (cfg.q == kUnquantized) {
        phase = kTwoPi * static_cast<double>(p) / static_cast<double>(period);
      } else {
        phase = kTwoPi * quantize_level_exact(p, period, cfg.q) / static_cast<double>(1 << cfg.q);
      }
      f(k, l) = std::polar(amp, phase);
    }
  }
  return f;
}

CodebookIndex codebook_index_toward(const GridIndex& g, const ArrayConfig& cfg) {
  return {mod(-g.j, cfg.rows), mod(-g.i, cfg.cols)};
}

CMatrix steering_codeword(const GridIndex& g, const ArrayConfig& cfg) {
  return dft_codeword(codebook_index_toward(g, cfg), cfg);
}

cplx beam_gain(const CMatrix& v, const CMatrix& f) {
  if (!v.same_shape(f)) throw ConfigError("beam_gain: dimension mismatch");
  cplx acc{};
  const auto vs = v.flat();
  const auto fs = f.flat();
  for (std::size_t n = 0; n < vs.size(); ++n) acc += vs[n] * std::conj(fs[n]);
  return acc;
}

cplx beam_gain(const Angles& a, const CMatrix& f) {
  const auto a_phi = steering_vector(a.phi, f.rows());
  const auto a_theta = steering_vector(a.theta, f.cols());
  cplx acc{};
  for (int k = 0; k < f.rows(); ++k) {
    cplx row{};
    for (int l = 0; l < f.cols(); ++l) row += a_theta[l] * std::conj(f(k, l));
    acc += a_phi[k] * row;
  }
  return acc;
}

std::vector<PatternSample> beam_pattern(const CMatrix& f, std::span<const Angles> grid) {
  if (grid.empty()) throw ConfigError("beam_pattern: empty angle grid");
  std::vector<PatternSample> out;
  out.reserve(grid.size());
  double peak = 0.0;
  for (const Angles& a : grid) {
    const double amp = std::abs(beam_gain(a, f));
    peak = std::max(peak, amp);
    out.push_back({a.theta, a.phi, amp});
  }
  if (peak > 0.0)
    for (auto& s : out) s.amplitude /= peak;
  return out;
}

std::vector<Angles> angle_grid_deg(double theta_min, double theta_max, double phi_min,
                                   double phi_max, double step) {
  if (!(step > 0.0)) throw ConfigError("angle_grid: step must be positive");
  if (theta_max < theta_min || phi_max < phi_min) throw ConfigError("angle_grid: empty range");
  const auto count = [step](double lo, double hi) {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  };
  const int nt = count(theta_min, theta_max);
  const int np = count(phi_min, phi_max);
  std::vector<Angles> grid;
  grid.reserve(static_cast<std::size_t>(nt) * np);
  for (int p = 0; p < np; ++p)
    for (int t = 0; t < nt; ++t) grid.push_back({deg2rad(theta_min + t * step), deg2rad(phi_min + p * step)});
  return grid;
}

void write_beam_pattern_csv(std::ostream& os, std::span<const PatternSample> pattern) {
  // Degrees are printed at 1e-9 resolution to hide the radian round trip.
  const auto deg = [](double rad) { return format_number(std::round(rad2deg(rad) * 1e9) / 1e9); };
  os << "theta_deg,phi_deg,normalized_amplitude\n";
  for (const auto& s : pattern) {
    os << deg(s.theta) << ',' << deg(s.phi) << ',' << format_number(s.amplitude) << '\n';
  }
}

}  // namespace csb
