// SPDX-License-Identifier: Apache-2.0
//
// Planar array responses, q-bit phase quantization, the quantized 2D-DFT
// codebook and beam-pattern evaluation.
//
// Index convention (used everywhere in the library): the array response is
// V(theta, phi) = a(phi) a(theta)^T, so row index k carries the elevation
// phase and column index l the azimuth phase,
//   [V]_{k,l} = exp(-j pi (k sin(phi) + l sin(theta))).
// A direction is on-grid when i = (cols/2) sin(theta) and j = (rows/2) sin(phi)
// are integers; then [V]_{k,l} = exp(-j 2pi (j k / rows + i l / cols)).

#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "csb/geometry.hpp"
#include "csb/types.hpp"

namespace csb {

/// Phase-shifter resolution sentinel for an ideal (unquantized) array.
inline constexpr int kUnquantized = 0;

/// Array geometry and phase-shifter resolution. Square arrays have
/// rows == cols == N_T; a linear array is the degenerate 1 x N_T case.
/// Every dimension larger than one must be even.
struct ArrayConfig {
  int rows = 16;
  int cols = 16;
  int q = kUnquantized;  // bits per phase shifter, or kUnquantized

  static ArrayConfig square(int n_t, int q);
  static ArrayConfig linear(int n_t, int q);

  void validate() const;
  int elements() const noexcept { return rows * cols; }
  bool is_square() const noexcept { return rows == cols; }
  double element_amplitude() const;  // 1 / sqrt(rows * cols)
};

/// Position on the 2D-DFT beam grid; i is the azimuth index (mod cols),
/// j the elevation index (mod rows).
struct GridIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Index into the codebook as written in its defining formula:
/// entry (k,l) = exp(j Q(2pi (a k / rows + b l / cols))) / sqrt(rows cols).
struct CodebookIndex {
  int a = 0;  // multiplies the row index, mod rows
  int b = 0;  // multiplies the column index, mod cols
  friend bool operator==(const CodebookIndex&, const CodebookIndex&) = default;
};

/// Signed interpretation of a grid index: idx for idx <= n/2, idx - n otherwise.
int signed_index(int idx, int n);

/// Physical angle arcsin(2 s / n) of grid index idx (s its signed value).
double grid_angle(int idx, int n);

Angles grid_angles(const GridIndex& g, const ArrayConfig& cfg);

/// Nearest beam-grid point: i = round((cols/2) sin(theta)) mod cols, j alike.
GridIndex nearest_grid(const Angles& a, const ArrayConfig& cfg);

/// Vandermonde vector with entries exp(-j pi k sin(theta)), k = 0..n-1.
std::vector<cplx> steering_vector(double theta, int n);

CMatrix array_response(double theta, double phi, int rows, int cols);
CMatrix array_response(const Angles& a, const ArrayConfig& cfg);

/// On-grid response built with exact integer phase indices.
CMatrix grid_response(const GridIndex& g, const ArrayConfig& cfg);

/// Nearest element of B_q = {2 pi i / 2^q} under wraparound distance. A phase
/// exactly midway between two levels resolves to the smaller one in [0, 2pi).
double quantize_phase(double x, int q);

/// Level index in [0, 2^q) of quantize_phase for the rational phase
/// 2pi num / den, computed without rounding error.
int quantize_level_exact(long long num, long long den, int q);

/// Elementwise exp(j Q_q(arg f)) / sqrt(rows cols). Entries must be nonzero.
CMatrix quantized_beamformer(const CMatrix& f, int q);

CMatrix dft_codeword(const CodebookIndex& c, const ArrayConfig& cfg);

/// Codebook entry whose unquantized version is matched to grid direction g,
/// i.e. a = -j mod rows, b = -i mod cols.
CodebookIndex codebook_index_toward(const GridIndex& g, const ArrayConfig& cfg);

/// dft_codeword(codebook_index_toward(g)); the beam a TX selects for an RX
/// whose nearest grid direction is g.
CMatrix steering_codeword(const GridIndex& g, const ArrayConfig& cfg);

/// <V, F> = sum_{k,l} V_{k,l} conj(F_{k,l}).
cplx beam_gain(const CMatrix& v, const CMatrix& f);

/// Gain toward an arbitrary direction without materialising V.
cplx beam_gain(const Angles& a, const CMatrix& f);

struct PatternSample {
  double theta = 0.0;
  double phi = 0.0;
  double amplitude = 0.0;  // |<V, F>| / max over the grid
};

/// Throws ConfigError on an empty grid.
std::vector<PatternSample> beam_pattern(const CMatrix& f, std::span<const Angles> grid);

/// Rectangular angle grid given in degrees (phi-major, endpoints included
/// when they land on the step); returned angles are in radians. Grid values
/// are formed as min + n * step in degrees so symmetric ranges stay exactly
/// symmetric.
std::vector<Angles> angle_grid_deg(double theta_min, double theta_max, double phi_min,
                                   double phi_max, double step);

/// CSV with header theta_deg,phi_deg,normalized_amplitude.
void write_beam_pattern_csv(std::ostream& os, std::span<const PatternSample> pattern);

}  // namespace csb
