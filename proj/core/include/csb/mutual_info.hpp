// SPDX-License-Identifier: Apache-2.0
//
// Mutual information of PSK signalling over AWGN and the secrecy mutual
// information (SMI) of a CSB-protected link.

#pragma once

#include <span>
#include <vector>

#include "csb/rng.hpp"
#include "csb/types.hpp"

namespace csb {

/// Gauss-Hermite rule for the weight exp(-x^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed once per size and cached; safe to call concurrently.
const GaussHermiteRule& gauss_hermite(int n);

struct MiEstimate {
  double bits = 0.0;
  int nodes = 0;  // per-dimension node count the estimate converged at
};

/// I(rho, M) in bits/symbol for equiprobable M-PSK over complex AWGN with
/// SNR rho. The expectation over the noise is a 2D Gauss-Hermite product
/// rule; the node count doubles from 8 until successive estimates agree to
/// 1e-5 bits (cap 128 per dimension).
MiEstimate psk_mutual_information_detail(double rho, int m_order);
double psk_mutual_information(double rho, int m_order);

/// Order of the constellation an on-grid eavesdropper effectively decodes:
/// M / gcd(|Omega_g|, M).
int effective_psk_order(int m_order, int g, int n_t);

/// max{I(rx_snr, M) - I(eve_snr, M / gcd(|Omega_g|, M)), 0}. SNR arguments
/// are linear and already include the beamforming gain.
double smi(double rx_snr, double eve_snr, int m_order, int g, int n_t);

/// Monte-Carlo estimate of I(X;Y) for y = a x + n, where x is uniform
/// M-PSK, a is drawn uniformly from `atoms` (unknown to the receiver) and
/// n ~ CN(0, sigma2). Atoms are visited in a stratified order.
double mixture_channel_mi(std::span<const cplx> atoms, double sigma2, int m_order, Rng& rng,
                          int samples);

}  // namespace csb
