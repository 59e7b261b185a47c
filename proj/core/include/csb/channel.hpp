// SPDX-License-Identifier: Apache-2.0
//
// Line-of-sight narrowband link model, PSK detection and Monte-Carlo symbol
// error rate experiments for the undefended, CSB and ASM transmitters.
//
//   y = sqrt(P) exp(j nu) <V, F> x + n,   n ~ CN(0, sigma2)

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csb/array.hpp"
#include "csb/types.hpp"

namespace csb {

struct LinkState {
  double p_r = 1.0;     // received reference power
  double nu = 0.0;      // propagation phase offset
  double sigma2 = 1.0;  // noise power

  void validate() const;
};

class PskConstellation {
 public:
  explicit PskConstellation(int m_order);

  int order() const noexcept { return static_cast<int>(symbols_.size()); }
  const std::vector<cplx>& symbols() const noexcept { return symbols_; }
  cplx symbol(int k) const { return symbols_.at(static_cast<std::size_t>(k)); }

  /// Index of the nearest symbol; ties go to the smaller index.
  int nearest(cplx z) const;

 private:
  std::vector<cplx> symbols_;
};

cplx received_symbol(const LinkState& link, const CMatrix& v, const CMatrix& f, cplx x,
                     cplx noise);

/// Same model with the beam gain <V, F> already evaluated.
cplx received_symbol(const LinkState& link, cplx gain, cplx x, cplx noise);

/// Free-space power p0 (r0 / r)^2. Throws ConfigError for r <= 0.
double path_power(double r, double p0 = 1.0, double r0 = 1.0);

/// Nearest-symbol decision on y / h_hat, or nullopt (an erasure) when
/// h_hat == 0.
std::optional<int> equalize_and_detect(cplx y, cplx h_hat, const PskConstellation& constellation);

enum class DefenseKind { None, Csb, Asm };

struct Defense {
  DefenseKind kind = DefenseKind::None;
  double c = 1.0;  // ASM active fraction

  static Defense none() { return {}; }
  static Defense csb() { return {DefenseKind::Csb, 1.0}; }
  static Defense asm_c(double c) { return {DefenseKind::Asm, c}; }

  /// "none", "csb" or "asm_<c>".
  std::string label() const;
};

struct ReceiverSnapshot {
  Angles angles;
  double p_r = 1.0;
  double nu = 0.0;
};

/// Geometry of one SER experiment: the TX serves `rx` with the codeword of
/// its nearest grid direction while `eve` listens. Both share sigma2.
struct LinkSnapshot {
  ArrayConfig array;
  ReceiverSnapshot rx;
  ReceiverSnapshot eve;
  double sigma2 = 1.0;
};

struct SerOptions {
  int m_order = 4;
  long long num_symbols = 100000;
  int chunk_size = 8192;
  int constellation_cap = 0;  // eavesdropper samples to record, at most 10^4
  bool record_rx_errors = false;
};

struct ConstellationPoint {
  cplx z;
  int true_index = 0;
};

struct SerResult {
  long long trials = 0;
  long long rx_errors = 0;
  long long eve_errors = 0;
  double mean_rx_snr = 0.0;   // mean of p_r |gain|^2 / sigma2 over the symbols
  double mean_eve_snr = 0.0;
  std::vector<ConstellationPoint> eve_constellation;  // equalized samples
  std::vector<long long> rx_error_positions;          // ascending symbol indices

  double rx_ser() const noexcept { return trials ? static_cast<double>(rx_errors) / trials : 0.0; }
  double eve_ser() const noexcept { return trials ? static_cast<double>(eve_errors) / trials : 0.0; }
};

/// Both receivers estimate their composite channel from a preamble sent on
/// the unshifted codeword (perfect estimation), then every data symbol goes
/// through the defense. Symbols, RX noise, eavesdropper noise and defense
/// draws come from separate streams derived from `seed` and the chunk
/// index, so runs that differ only in the defense see identical symbols
/// and noise.
SerResult run_ser_experiment(const LinkSnapshot& link, const Defense& defense,
                             const SerOptions& options, std::uint64_t seed);

/// Rows re,im,true_symbol_index.
void write_constellation_csv(std::ostream& os, const std::vector<ConstellationPoint>& points);

}  // namespace csb
