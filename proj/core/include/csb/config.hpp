// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: flat key = value text grouped under [section]
// headers. Angles are written in degrees; '#' starts a comment. Keys not
// present keep their defaults; unknown sections or keys are rejected.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "csb/airspy.hpp"

namespace csb {

struct ScenarioSettings {
  double tilt_deg = 15.0;
  double h = 8.0;
  double lane_x = 3.0;
  double rx_speed = 20.0;
  double y_start = -10.0;
  double y_end = 10.0;
  double t_s = 0.025;
  double sigma2 = 0.01;
  double p0 = 1.0;
  double r0 = 1.0;
  friend bool operator==(const ScenarioSettings&, const ScenarioSettings&) = default;
};

struct AttackSettings {
  double d = 1.0;
  double beta_deg = 160.0;
  double v_max = 17.0;
  double epsilon_deg = 3.0;
  int grid_g = 64;
  std::vector<int> q_list{1, 2};
  friend bool operator==(const AttackSettings&, const AttackSettings&) = default;
};

struct BeamPatternSettings {
  double target_theta_deg = -30.0;
  double target_phi_deg = -42.0;
  double theta_min_deg = -90.0;
  double theta_max_deg = 90.0;
  double phi_min_deg = -90.0;
  double phi_max_deg = 90.0;
  double step_deg = 1.0;
  friend bool operator==(const BeamPatternSettings&, const BeamPatternSettings&) = default;
};

struct SmiSettings {
  int n_t = 16;
  double rx_theta_deg = 25.0;
  double snr_db = 10.0;  // matched-beam SNR, beamforming gain included
  int m_order = 4;
  std::vector<int> q_list{1, 2};
  std::vector<double> asm_c{0.3, 0.5, 0.7};
  double eve_theta_min_deg = -90.0;
  double eve_theta_max_deg = 90.0;
  double eve_step_deg = 1.0;
  int samples = 4000;
  int asm_subsets = 64;
  friend bool operator==(const SmiSettings&, const SmiSettings&) = default;
};

struct SerSettings {
  int q = 2;
  int m_order = 4;
  double snr_min_db = -10.0;
  double snr_max_db = 30.0;
  double snr_step_db = 2.0;
  long long symbols_per_step = 2000;
  std::vector<double> asm_c{0.3, 0.5, 0.7};
  std::vector<double> table_asm_c{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  double table_snr_db = 10.0;
  double eve_epsilon_deg = 20.0;
  int constellation_cap = 10000;
  friend bool operator==(const SerSettings&, const SerSettings&) = default;
};

struct ApnSettings {
  int n_t = 16;
  int delta_i = 1;
  int delta_j = 0;
  int m_order = 4;
  friend bool operator==(const ApnSettings&, const ApnSettings&) = default;
};

struct ExperimentConfig {
  std::optional<std::uint64_t> seed;
  int rows = 16;
  int cols = 16;
  ScenarioSettings scenario;
  AttackSettings attack;
  BeamPatternSettings beam_pattern;
  SmiSettings smi;
  SerSettings ser;
  ApnSettings apn;

  /// Throws ConfigError on any non-physical value.
  void validate() const;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& os, const ExperimentConfig& cfg);

/// Oracle-scale overrides: 4 x 4 beam patterns, G = 5 and N = 4 attacks,
/// short Monte-Carlo runs.
ExperimentConfig tiny_config(ExperimentConfig cfg);

Scenario make_scenario(const ExperimentConfig& cfg, int q);
AttackConstraints make_constraints(const ExperimentConfig& cfg);

}  // namespace csb
