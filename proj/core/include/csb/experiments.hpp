// SPDX-License-Identifier: Apache-2.0
//
// Figure-level experiments driven by an ExperimentConfig. Each returns plain
// data; the CSV writers fix the column layout.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "csb/airspy.hpp"
#include "csb/channel.hpp"
#include "csb/config.hpp"
#include "csb/defense.hpp"

namespace csb {

struct BeamPatternOutput {
  int q = kUnquantized;
  std::vector<PatternSample> samples;
};

/// Normalized patterns for q = unquantized, 1 and 2 toward the target's
/// nearest grid beam.
std::vector<BeamPatternOutput> run_beam_pattern(const ExperimentConfig& cfg);

struct SmiRow {
  double eve_theta_deg = 0.0;
  bool on_grid = false;
  int g = -1;                   // |i_R - i_E| on grid, -1 otherwise
  double csb = 0.0;
  std::vector<double> asm_smi;  // one per smi.asm_c entry
  double csb_theory = 0.0;      // NaN off grid
};

struct SmiSweep {
  int q = 1;
  int rx_grid = 0;
  double sigma2 = 1.0;
  double rx_mi_csb = 0.0;
  std::vector<double> rx_mi_asm;
  double rx_snr_none = 0.0;  // mean p |gain|^2 / sigma2 at the RX
  double rx_snr_csb = 0.0;
  std::vector<double> rx_snr_asm;
  std::vector<SmiRow> rows;  // ascending eavesdropper angle
};

/// SMI versus eavesdropper azimuth for a linear array with the RX and the
/// eavesdropper at equal range. The sweep covers the configured uniform grid
/// plus every on-grid direction. All mutual-information estimates share one
/// noise stream, so identical channels give identical estimates.
SmiSweep run_smi_sweep(const ExperimentConfig& cfg, int q, std::uint64_t seed);

/// Columns eve_theta_deg,on_grid,g,csb,asm_<c>...,csb_theory.
void write_smi_csv(std::ostream& os, const SmiSweep& sweep, const std::vector<double>& asm_c);

struct AttackOutput {
  AttackProblem problem;
  Trajectory trajectory;
  std::vector<SecrecySample> profile;
};

AttackOutput run_attack(const ExperimentConfig& cfg, int q);

struct SerSweepRow {
  double snr_db = 0.0;
  std::string defense;
  double rx_ser = 0.0;
  double eve_ser = 0.0;
  long long trials = 0;
};

struct SerTableRow {
  std::string defense;
  double c = 1.0;
  double mean_rx_snr_db = 0.0;
  double rx_ser = 0.0;
  double eve_ser = 0.0;
};

struct SerOutput {
  std::vector<SerSweepRow> sweep;
  std::vector<SerTableRow> table;
  std::vector<ConstellationPoint> constellation_none;
  std::vector<ConstellationPoint> constellation_csb;
  Trajectory eve_trajectory;
};

/// SER over one episode against an AirSpy eavesdropper planned with the
/// ser.eve_epsilon_deg keep-out angle. snr_db is the undefended
/// post-beamforming SNR at the RX at the middle of the episode; it fixes the
/// noise power shared by both receivers.
SerOutput run_ser(const ExperimentConfig& cfg, std::uint64_t seed);

void write_ser_sweep_csv(std::ostream& os, const std::vector<SerSweepRow>& rows);
void write_ser_table_csv(std::ostream& os, const std::vector<SerTableRow>& rows);

}  // namespace csb
