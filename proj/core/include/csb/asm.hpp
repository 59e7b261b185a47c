// SPDX-License-Identifier: Apache-2.0
//
// Antenna subset modulation (ASM-c): per symbol, keep a uniformly random
// fraction c of the antennas and switch the rest off. Active entries keep
// their value (per-antenna power constraint, no renormalization) and the
// symbol is rotated so the phase seen at the RX direction matches the phase
// of the full beam the receiver trained on.

#pragma once

#include <vector>

#include "csb/array.hpp"
#include "csb/rng.hpp"
#include "csb/types.hpp"

namespace csb {

struct AsmConfig {
  double c = 0.5;  // active-antenna fraction in (0, 1]

  /// round(c * elements); throws ConfigError when outside [1, elements].
  int active_count(int elements) const;
};

/// Uniform subset of `active` distinct indices from [0, total), ascending.
std::vector<int> draw_active_subset(int total, int active, Rng& rng);

/// Copy of f with every entry outside `active` set to zero.
CMatrix masked_beamformer(const CMatrix& f, const std::vector<int>& active);

/// Gain toward `v` of f restricted to `active`, without forming the mask.
cplx masked_gain(const CMatrix& v, const CMatrix& f, const std::vector<int>& active);

struct AsmTransmission {
  CMatrix beamformer;
  cplx symbol;
};

/// x' = x exp(j (arg<V_rx, F> - arg<V_rx, F_asm>)). When the masked gain is
/// exactly zero the symbol is left unrotated.
AsmTransmission asm_transmit(const CMatrix& f, cplx x, const Angles& rx, const AsmConfig& cfg,
                             Rng& rng);

}  // namespace csb
