// SPDX-License-Identifier: Apache-2.0
//
// Circulant shift-based beamforming (CSB).
//
// Per data symbol the TX applies a uniformly random 2D circulant shift
// P_{m,n} to its codebook beamformer and pre-rotates the symbol by the phase
// the shift induces at the RX grid direction. For an on-grid direction (i,j)
//   <V, P_{m,n}(F)> = <V, F> exp(-j 2pi (m j / rows + n i / cols)),
// so the RX sees the undisturbed symbol while a receiver at another grid
// direction sees artificial phase noise (APN) that it cannot undo.

#pragma once

#include <iosfwd>
#include <vector>

#include "csb/array.hpp"
#include "csb/rng.hpp"
#include "csb/types.hpp"

namespace csb {

/// Shift by m rows (elevation) and n columns (azimuth), both taken mod the
/// matrix dimensions.
struct ShiftPair {
  int m = 0;
  int n = 0;
  friend bool operator==(const ShiftPair&, const ShiftPair&) = default;
};

/// [P_{m,n}(A)]_{k,l} = [A]_{(k-m) mod rows, (l-n) mod cols}.
CMatrix circulant_shift(const CMatrix& a, ShiftPair s);

/// exp(-j 2pi (m j / rows + n i / cols)): the gain rotation a shift induces
/// at on-grid direction g.
cplx shift_phase_factor(ShiftPair s, const GridIndex& g, const ArrayConfig& cfg);

/// x * conj(shift_phase_factor(s, rx, cfg)).
cplx compensated_symbol(cplx x, ShiftPair s, const GridIndex& rx, const ArrayConfig& cfg);

/// Uniform over {0..rows-1} x {0..cols-1}.
ShiftPair draw_shift(const ArrayConfig& cfg, Rng& rng);

struct CsbTransmission {
  CMatrix beamformer;
  cplx symbol;
  ShiftPair shift;
};

CsbTransmission csb_transmit(const CMatrix& f, cplx x, const GridIndex& rx,
                             const ArrayConfig& cfg, Rng& rng);

/// <V, P_s(F)> for every shift, laid out as table[m * cols + n]. Entries are
/// evaluated exactly as beam_gain(v, circulant_shift(f, s)).
std::vector<cplx> shifted_gain_table(const CMatrix& v, const CMatrix& f);

/// Phase index of the APN at a receiver offset (di, dj) = RX grid minus
/// receiver grid: (m dj + n di) mod n_t, phase 2pi k / n_t.
int apn_phase_index(ShiftPair s, int delta_i, int delta_j, int n_t);

/// Exact law of the APN for grid offset (delta_i, delta_j) on an
/// n_t x n_t array: uniform over the multiples of gcd(n_t, g), g = gcd(di, dj)
/// (gcd(0,0) = 0, which collapses to a point mass at zero phase).
struct ApnLaw {
  int n_t = 0;
  int delta_i = 0;
  int delta_j = 0;
  int g = 0;
  std::vector<int> support;  // phase indices k, ascending; phase = 2pi k / n_t
  int prob_num = 1;          // probability per atom = prob_num / prob_den
  int prob_den = 1;

  double probability() const noexcept { return static_cast<double>(prob_num) / prob_den; }
  std::vector<double> phases() const;
};

ApnLaw apn_law(int delta_i, int delta_j, int n_t);

/// Rows phase_deg,probability.
void write_apn_csv(std::ostream& os, const ApnLaw& law);

/// Symbols of an M-PSK constellation that an on-grid receiver with gcd value
/// g cannot tell apart under APN. Class r holds indices r + num_classes * t.
struct PartitionReport {
  int m_order = 0;
  int support_size = 0;  // |Omega_g| = n_t / gcd(n_t, g)
  int class_size = 0;    // gcd(|Omega_g|, M)
  int num_classes = 0;   // M / class_size, the distinguishable symbols
  std::vector<std::vector<int>> classes;

  double distinguishable_bits() const;
};

PartitionReport partition_report(int m_order, int g, int n_t);

/// Structured JSON text of an ApnLaw / PartitionReport pair.
void write_apn_json(std::ostream& os, const ApnLaw& law, const PartitionReport& report);

}  // namespace csb
