// SPDX-License-Identifier: Apache-2.0
//
// AirSpy: a UAV eavesdropper that knows the RX path in advance plans a
// trajectory on a virtual plane parallel to the TX array so as to maximise
// its own received rate, subject to a speed limit and an angular keep-out
// zone around the RX. The plane is discretised to a G x G grid over
// u, v in [-1, 1] and the plan is computed by finite-horizon backward
// induction over time-indexed states (u, v, t).

#pragma once

#include <iosfwd>
#include <vector>

#include "csb/array.hpp"
#include "csb/geometry.hpp"
#include "csb/types.hpp"

namespace csb {

/// V2I scenario: the TX sits at the origin, tilted down by theta_tilt, and
/// the RX drives along x = lane_x, z = -h from y_start to y_end.
struct Scenario {
  ArrayConfig array{16, 16, 1};
  double theta_tilt = deg2rad(15.0);
  double h = 8.0;
  double lane_x = 3.0;
  double rx_speed = 20.0;
  double y_start = -10.0;
  double y_end = 10.0;
  double t_s = 0.025;
  double sigma2 = 0.01;
  double p0 = 1.0;
  double r0 = 1.0;

  void validate() const;
  /// span / (rx_speed t_s) + 1, rounded to the nearest integer.
  int steps() const;
};

struct AttackConstraints {
  UavPlaneSpec plane;  // its tilt is taken from the scenario
  double v_max = 17.0;
  double epsilon = deg2rad(3.0);
  int grid_g = 64;

  void validate() const;
  /// Admissible per-step displacement in (u, v) units:
  /// v_max t_s / (2 d tan(beta / 2)).
  double step_radius(double t_s) const;
};

struct RxState {
  RectPoint position;
  Angles angles;
  double r = 0.0;
  GridIndex grid;  // beam the TX serves at this step
};

RxState rx_state_at(const Scenario& sc, int t);

/// log2(1 + rho |gain|^2) with rho = path_power(r) / sigma2.
double link_rate(const CMatrix& f, const Angles& a, double r, const Scenario& sc);

/// RX rate minus eavesdropper rate; negative when the eavesdropper is better
/// off than the RX.
double secrecy_rate(const CMatrix& f, const Angles& rx, double r_rx, const Angles& eve,
                    double r_eve, const Scenario& sc);

/// Precomputed attack instance: grid coordinates, per-step beamformers,
/// reward and feasibility tables. Cells are numbered u-major,
/// cell = iu * G + iv, with u = -1 + 2 iu / (G - 1) (u = 0 when G = 1).
class AttackProblem {
 public:
  AttackProblem(const Scenario& sc, const AttackConstraints& ac);

  int steps() const noexcept { return steps_; }
  int grid() const noexcept { return g_; }
  int cells() const noexcept { return g_ * g_; }
  const Scenario& scenario() const noexcept { return sc_; }
  const AttackConstraints& constraints() const noexcept { return ac_; }

  UavPlaneCoord coord(int cell) const;
  /// Angles of a cell; meaningful only when in_region(cell).
  const Angles& angles(int cell) const { return angles_[static_cast<std::size_t>(cell)]; }
  double range(int cell) const { return range_[static_cast<std::size_t>(cell)]; }
  bool in_region(int cell) const { return region_[static_cast<std::size_t>(cell)] != 0; }

  const RxState& rx(int t) const { return rx_[static_cast<std::size_t>(t)]; }
  const CMatrix& beamformer(int t) const { return beams_[static_cast<std::size_t>(t)]; }

  /// In the plane region and outside the epsilon cone around the RX at t.
  bool feasible(int cell, int t) const { return feasible_[index(cell, t)] != 0; }
  /// log2(1 + rho_E |<V(cell), F_t>|^2); zero outside the region.
  double reward(int cell, int t) const { return reward_[index(cell, t)]; }

  bool velocity_ok(int from, int to) const;
  /// Cells reachable from `cell` at step t that are feasible at t + 1,
  /// ascending.
  std::vector<int> valid_actions(int cell, int t) const;

 private:
  std::size_t index(int cell, int t) const {
    return static_cast<std::size_t>(t) * static_cast<std::size_t>(cells()) +
           static_cast<std::size_t>(cell);
  }

  Scenario sc_;
  AttackConstraints ac_;
  int steps_ = 0;
  int g_ = 0;
  double radius_cells2_ = 0.0;  // squared step radius in grid cells
  std::vector<std::pair<int, int>> moves_;
  std::vector<Angles> angles_;
  std::vector<double> range_;
  std::vector<char> region_;
  std::vector<RxState> rx_;
  std::vector<CMatrix> beams_;
  std::vector<char> feasible_;
  std::vector<double> reward_;
};

/// H(s, t): best reward collectable over steps t+1..N-1 from s. The last
/// layer is zero and states with no valid successor hold -infinity.
struct ValueTable {
  int steps = 0;
  int cells = 0;
  std::vector<double> h;

  double at(int cell, int t) const {
    return h[static_cast<std::size_t>(t) * static_cast<std::size_t>(cells) +
             static_cast<std::size_t>(cell)];
  }
};

ValueTable value_iteration(const AttackProblem& p);

struct Trajectory {
  std::vector<int> cells;
  std::vector<UavPlaneCoord> steps;
  double total_reward = 0.0;  // sum of per-step rewards, start step included
};

/// Start at the feasible cell maximising R(s, 0) + H(s, 0) and follow the
/// greedy successor. Ties break to the smallest cell index. Throws
/// InfeasibleError when no start cell has a finite value.
Trajectory extract_trajectory(const AttackProblem& p, const ValueTable& h);

/// Throws InfeasibleError unless every step is feasible and every move
/// respects the speed limit.
void check_permissible(const AttackProblem& p, const Trajectory& tr);

struct SecrecySample {
  double t_s = 0.0;
  double rx_rate = 0.0;
  double eve_rate = 0.0;
  double secrecy_rate = 0.0;
};

std::vector<SecrecySample> episode_secrecy_profile(const AttackProblem& p, const Trajectory& tr);

/// Rows t_s,u,v,theta_deg,phi_deg,reward,secrecy_rate.
void write_trajectory_csv(std::ostream& os, const AttackProblem& p, const Trajectory& tr,
                          const std::vector<SecrecySample>& profile);

/// Rows t_s,rx_rate,eve_rate,secrecy_rate.
void write_secrecy_csv(std::ostream& os, const std::vector<SecrecySample>& profile);

}  // namespace csb
