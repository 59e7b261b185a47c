// SPDX-License-Identifier: Apache-2.0

#include "csb/airspy.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "csb/channel.hpp"
#include "csb/csv.hpp"
#include "parallel.hpp"

namespace csb {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

void Scenario::validate() const {
  array.validate();
  if (!positive_finite(h)) throw ConfigError("scenario: h must be positive");
  if (!positive_finite(lane_x)) throw ConfigError("scenario: lane_x must be positive");
  if (!positive_finite(rx_speed)) throw ConfigError("scenario: rx_speed must be positive");
  if (!positive_finite(t_s)) throw ConfigError("scenario: t_s must be positive");
  if (!positive_finite(sigma2)) throw ConfigError("scenario: sigma2 must be positive");
  if (!positive_finite(p0) || !positive_finite(r0))
    throw ConfigError("scenario: p0 and r0 must be positive");
  if (!std::isfinite(y_start) || !std::isfinite(y_end) || y_end < y_start)
    throw ConfigError("scenario: y range must satisfy y_start <= y_end");
  if (!(std::abs(theta_tilt) < kPi / 2)) throw ConfigError("scenario: tilt must lie in (-90, 90) deg");
  const double n = (y_end - y_start) / (rx_speed * t_s);
  if (n > 1e6) throw ConfigError("scenario: episode too long");
}

int Scenario::steps() const {
  return static_cast<int>(std::lround((y_end - y_start) / (rx_speed * t_s))) + 1;
}

void AttackConstraints::validate() const {
  plane.validate();
  if (!(v_max >= 0.0) || !std::isfinite(v_max)) throw ConfigError("attack: v_max must be >= 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("attack: epsilon must be >= 0");
  if (grid_g < 1 || grid_g > 1024) throw ConfigError("attack: grid size must lie in [1, 1024]");
}

double AttackConstraints::step_radius(double t_s) const {
  return v_max * t_s / (2.0 * plane.half_width());
}

RxState rx_state_at(const Scenario& sc, int t) {
  if (t < 0 || t >= sc.steps()) throw ConfigError("rx_state_at: step outside the episode");
  RxState s;
  s.position = {sc.lane_x, sc.y_start + sc.rx_speed * t * sc.t_s, -sc.h};
  const SphPoint sp = rect_to_msph(s.position, sc.theta_tilt);
  s.angles = {sp.theta, sp.phi};
  s.r = sp.r;
  s.grid = nearest_grid(s.angles, sc.array);
  return s;
}

double link_rate(const CMatrix& f, const Angles& a, double r, const Scenario& sc) {
  const double rho = path_power(r, sc.p0, sc.r0) / sc.sigma2;
  return std::log2(1.0 + rho * std::norm(beam_gain(a, f)));
}

double secrecy_rate(const CMatrix& f, const Angles& rx, double r_rx, const Angles& eve,
                    double r_eve, const Scenario& sc) {
  return link_rate(f, rx, r_rx, sc) - link_rate(f, eve, r_eve, sc);
}

AttackProblem::AttackProblem(const Scenario& sc, const AttackConstraints& ac) : sc_(sc), ac_(ac) {
  sc_.validate();
  ac_.plane.theta_tilt = sc_.theta_tilt;
  ac_.validate();
  steps_ = sc_.steps();
  g_ = ac_.grid_g;

  const double spacing = g_ > 1 ? 2.0 / (g_ - 1) : 1.0;
  const double rc = ac_.step_radius(sc_.t_s) / spacing;
  radius_cells2_ = rc * rc * (1.0 + 1e-12);
  const int reach = static_cast<int>(std::min<double>(std::floor(rc + 1e-9), g_ - 1));
  for (int du = -reach; du <= reach; ++du)
    for (int dv = -reach; dv <= reach; ++dv)
      if (du * du + dv * dv <= radius_cells2_) moves_.emplace_back(du, dv);

  const auto n_cells = static_cast<std::size_t>(cells());
  angles_.assign(n_cells, {});
  range_.assign(n_cells, 0.0);
  region_.assign(n_cells, 0);
  for (int c = 0; c < cells(); ++c) {
    const UavPlaneCoord pc = coord(c);
    if (!in_plane_region(pc, ac_.plane)) continue;
    const SphPoint sp = rect_to_msph(uav_plane_to_rect(pc, ac_.plane), ac_.plane.theta_tilt);
    angles_[static_cast<std::size_t>(c)] = {sp.theta, sp.phi};
    range_[static_cast<std::size_t>(c)] = sp.r;
    region_[static_cast<std::size_t>(c)] = 1;
  }

  for (int t = 0; t < steps_; ++t) {
    rx_.push_back(rx_state_at(sc_, t));
    beams_.push_back(steering_codeword(rx_.back().grid, sc_.array));
  }

  feasible_.assign(n_cells * static_cast<std::size_t>(steps_), 0);
  reward_.assign(n_cells * static_cast<std::size_t>(steps_), 0.0);
  const double eps2 = ac_.epsilon * ac_.epsilon;
  detail::parallel_for(static_cast<std::size_t>(steps_), [&](std::size_t ts) {
    const int t = static_cast<int>(ts);
    const Angles& ra = rx_[ts].angles;
    for (int c = 0; c < cells(); ++c) {
      if (!in_region(c)) continue;
      const Angles& a = angles(c);
      const double dt = a.theta - ra.theta;
      const double dp = a.phi - ra.phi;
      feasible_[index(c, t)] = (dt * dt + dp * dp > eps2) ? 1 : 0;
      reward_[index(c, t)] = link_rate(beams_[ts], a, range(c), sc_);
    }
  });
}

UavPlaneCoord AttackProblem::coord(int cell) const {
  const int iu = cell / g_;
  const int iv = cell % g_;
  if (g_ == 1) return {0.0, 0.0};
  const double step = 2.0 / (g_ - 1);
  // Mirror the upper half so the grid is exactly symmetric about zero.
  auto at = [&](int i) {
    return 2 * i < g_ - 1 ? -1.0 + step * i : 1.0 - step * (g_ - 1 - i);
  };
  return {at(iu), at(iv)};
}

bool AttackProblem::velocity_ok(int from, int to) const {
  const int du = to / g_ - from / g_;
  const int dv = to % g_ - from % g_;
  return du * du + dv * dv <= radius_cells2_;
}

std::vector<int> AttackProblem::valid_actions(int cell, int t) const {
  std::vector<int> out;
  if (t + 1 >= steps_) return out;
  const int iu = cell / g_;
  const int iv = cell % g_;
  for (auto [du, dv] : moves_) {
    const int nu = iu + du;
    const int nv = iv + dv;
    if (nu < 0 || nu >= g_ || nv < 0 || nv >= g_) continue;
    const int nc = nu * g_ + nv;
    if (feasible(nc, t + 1)) out.push_back(nc);
  }
  return out;
}

ValueTable value_iteration(const AttackProblem& p) {
  ValueTable vt;
  vt.steps = p.steps();
  vt.cells = p.cells();
  const auto nc = static_cast<std::size_t>(vt.cells);
  vt.h.assign(nc * static_cast<std::size_t>(vt.steps), 0.0);
  for (int t = vt.steps - 2; t >= 0; --t) {
    double* layer = vt.h.data() + static_cast<std::size_t>(t) * nc;
    detail::parallel_for(nc, [&](std::size_t c) {
      double best = kNegInf;
      for (int s : p.valid_actions(static_cast<int>(c), t)) {
        const double v = p.reward(s, t + 1) + vt.at(s, t + 1);
        if (v > best) best = v;
      }
      layer[c] = best;
    });
  }
  return vt;
}

Trajectory extract_trajectory(const AttackProblem& p, const ValueTable& h) {
  Trajectory tr;
  int cur = -1;
  double best = kNegInf;
  for (int c = 0; c < p.cells(); ++c) {
    if (!p.feasible(c, 0)) continue;
    const double v = p.reward(c, 0) + h.at(c, 0);
    if (v > best) {
      best = v;
      cur = c;
    }
  }
  if (cur < 0) throw InfeasibleError("no permissible trajectory: every start cell is infeasible");
  tr.cells.push_back(cur);
  for (int t = 0; t + 1 < p.steps(); ++t) {
    int next = -1;
    double nb = kNegInf;
    for (int s : p.valid_actions(cur, t)) {
      const double v = p.reward(s, t + 1) + h.at(s, t + 1);
      if (v > nb) {
        nb = v;
        next = s;
      }
    }
    if (next < 0) throw InfeasibleError("trajectory extraction reached a dead end");
    cur = next;
    tr.cells.push_back(cur);
  }
  // Right fold, the same association order as the backward recursion.
  double total = 0.0;
  for (int t = p.steps() - 1; t >= 0; --t)
    total = p.reward(tr.cells[static_cast<std::size_t>(t)], t) + total;
  tr.total_reward = total;
  for (int c : tr.cells) tr.steps.push_back(p.coord(c));
  check_permissible(p, tr);
  return tr;
}

void check_permissible(const AttackProblem& p, const Trajectory& tr) {
  if (static_cast<int>(tr.cells.size()) != p.steps())
    throw InfeasibleError("trajectory length does not match the episode");
  for (int t = 0; t < p.steps(); ++t) {
    const int c = tr.cells[static_cast<std::size_t>(t)];
    if (c < 0 || c >= p.cells() || !p.feasible(c, t))
      throw InfeasibleError("trajectory violates the angular separation at step " +
                            std::to_string(t));
    if (t > 0 && !p.velocity_ok(tr.cells[static_cast<std::size_t>(t - 1)], c))
      throw InfeasibleError("trajectory violates the speed limit at step " + std::to_string(t));
  }
}

std::vector<SecrecySample> episode_secrecy_profile(const AttackProblem& p, const Trajectory& tr) {
  std::vector<SecrecySample> out;
  out.reserve(tr.cells.size());
  const Scenario& sc = p.scenario();
  for (int t = 0; t < static_cast<int>(tr.cells.size()); ++t) {
    const int c = tr.cells[static_cast<std::size_t>(t)];
    const RxState& rx = p.rx(t);
    SecrecySample s;
    s.t_s = t * sc.t_s;
    s.rx_rate = link_rate(p.beamformer(t), rx.angles, rx.r, sc);
    s.eve_rate = link_rate(p.beamformer(t), p.angles(c), p.range(c), sc);
    s.secrecy_rate = s.rx_rate - s.eve_rate;
    out.push_back(s);
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const AttackProblem& p, const Trajectory& tr,
                          const std::vector<SecrecySample>& profile) {
  os << "t_s,u,v,theta_deg,phi_deg,reward,secrecy_rate\n";
  for (std::size_t t = 0; t < tr.cells.size(); ++t) {
    const int c = tr.cells[t];
    const Angles& a = p.angles(c);
    os << format_number(profile.at(t).t_s) << ',' << format_number(tr.steps[t].u) << ','
       << format_number(tr.steps[t].v) << ',' << format_number(rad2deg(a.theta)) << ','
       << format_number(rad2deg(a.phi)) << ',' << format_number(p.reward(c, static_cast<int>(t)))
       << ',' << format_number(profile[t].secrecy_rate) << '\n';
  }
}

void write_secrecy_csv(std::ostream& os, const std::vector<SecrecySample>& profile) {
  os << "t_s,rx_rate,eve_rate,secrecy_rate\n";
  for (const auto& s : profile)
    os << format_number(s.t_s) << ',' << format_number(s.rx_rate) << ','
       << format_number(s.eve_rate) << ',' << format_number(s.secrecy_rate) << '\n';
}

}  // namespace csb
