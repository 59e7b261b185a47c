// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "csb/airspy.hpp"
#include "csb/channel.hpp"
#include "csb/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csb;
using doctest::Approx;

namespace {

Scenario small_scenario(int n_t, int q, int steps, double tilt_deg = 15.0) {
  Scenario sc;
  sc.array = ArrayConfig::square(n_t, q);
  sc.theta_tilt = deg2rad(tilt_deg);
  if (steps == 1) {
    sc.y_start = sc.y_end = 0.0;
  } else {
    sc.t_s = (sc.y_end - sc.y_start) / (sc.rx_speed * (steps - 1));
  }
  return sc;
}

AttackConstraints constraints(int g, double v_max, double eps_deg) {
  AttackConstraints ac;
  ac.grid_g = g;
  ac.v_max = v_max;
  ac.epsilon = deg2rad(eps_deg);
  return ac;
}

int circ_dist(int a, int b, int n) {
  const int d = mod(a - b, n);
  return std::min(d, n - d);
}

}  // namespace

TEST_SUITE("airspy") {
  TEST_CASE("scenario defaults") {
    const Scenario sc;
    CHECK_NOTHROW(sc.validate());
    CHECK(sc.steps() == 41);
    Scenario bad = sc;
    bad.h = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = sc;
    bad.y_end = -20;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    AttackConstraints ac;
    CHECK_NOTHROW(ac.validate());
    ac.grid_g = 0;
    CHECK_THROWS_AS(ac.validate(), ConfigError);
    ac = {};
    ac.v_max = -1;
    CHECK_THROWS_AS(ac.validate(), ConfigError);
  }

  TEST_CASE("RX state along the lane") {
    const Scenario sc;
    const auto mid = rx_state_at(sc, 20);
    CHECK(mid.position.x == 3.0);
    CHECK(mid.position.y == 0.0);
    CHECK(mid.position.z == -8.0);
    CHECK(mid.r == Approx(std::sqrt(73.0)).epsilon(1e-14));
    CHECK(mid.angles.theta == 0.0);
    CHECK(rad2deg(mid.angles.phi) == Approx(-54.44395478).epsilon(1e-9));
    CHECK(mid.grid.i == 0);
    CHECK(mid.grid.j == mod(static_cast<int>(std::lround(8 * std::sin(mid.angles.phi))), 16));
    const auto first = rx_state_at(sc, 0);
    const auto last = rx_state_at(sc, 40);
    CHECK(first.position.y == -10.0);
    CHECK(last.position.y == Approx(10.0));
    CHECK(first.angles.theta == Approx(-last.angles.theta));
    CHECK_THROWS_AS(rx_state_at(sc, 41), ConfigError);
    CHECK_THROWS_AS(rx_state_at(sc, -1), ConfigError);
  }

  TEST_CASE("admissible step radius") {
    const AttackConstraints ac;
    // 17 m/s * 25 ms / (2 * 1 m * tan 80 deg), tan 80 deg = 5.671281819617709.
    CHECK(ac.step_radius(0.025) == Approx(0.425 / 11.342563639235418).epsilon(1e-12));
    CHECK(ac.step_radius(0.025) == Approx(0.0374695).epsilon(1e-5));
  }

  TEST_CASE("secrecy rate reference cases") {
    Scenario sc;
    const auto rx = rx_state_at(sc, 20);
    const auto f = steering_codeword(rx.grid, sc.array);
    const double rx_rate = link_rate(f, rx.angles, rx.r, sc);
    CHECK(rx_rate > 0);
    CHECK(secrecy_rate(f, rx.angles, rx.r, rx.angles, rx.r, sc) == 0.0);

    // A direction with zero gain: an unquantized beam on an orthogonal grid point.
    Scenario s0 = sc;
    s0.array = ArrayConfig::square(16, kUnquantized);
    const GridIndex g{2, 3};
    const auto f0 = steering_codeword(g, s0.array);
    const auto null_dir = grid_angles({5, 3}, s0.array);
    CHECK(secrecy_rate(f0, grid_angles(g, s0.array), 4.0, null_dir, 1.0, s0) ==
          Approx(link_rate(f0, grid_angles(g, s0.array), 4.0, s0)).epsilon(1e-9));

    // One-bit mirror lobe at half the distance.
    const auto gm = grid_angles({mod(-rx.grid.i, 16), mod(-rx.grid.j, 16)}, sc.array);
    const auto ga = grid_angles(rx.grid, sc.array);
    CHECK(std::abs(beam_gain(gm, f)) == Approx(std::abs(beam_gain(ga, f))).epsilon(1e-12));
    CHECK(secrecy_rate(f, ga, rx.r, gm, rx.r / 2, sc) < 0);
    CHECK(secrecy_rate(f, ga, rx.r, gm, rx.r, sc) == Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("rewards match an independent evaluation") {
    const Scenario sc = small_scenario(8, 2, 4);
    const AttackProblem p(sc, constraints(9, 40, 3));
    for (int t = 0; t < p.steps(); ++t)
      for (int c = 0; c < p.cells(); ++c) {
        if (!p.in_region(c)) {
          CHECK(p.reward(c, t) == 0.0);
          CHECK_FALSE(p.feasible(c, t));
          continue;
        }
        const auto xyz = uav_plane_to_rect(p.coord(c), p.constraints().plane);
        const double r = std::sqrt(xyz.x * xyz.x + xyz.y * xyz.y + xyz.z * xyz.z);
        CHECK(p.range(c) == Approx(r).epsilon(1e-12));
        const auto a = msph_angles_of_plane_coord(p.coord(c), p.constraints().plane);
        const cplx g = oracle::direct_gain(a.theta, a.phi, p.beamformer(t));
        const double expect = std::log2(1.0 + sc.p0 * sc.r0 * sc.r0 / (r * r) / sc.sigma2 * std::norm(g));
        CHECK(p.reward(c, t) == Approx(expect).epsilon(1e-10));
        const auto& ra = p.rx(t).angles;
        const double sep2 = std::pow(a.theta - ra.theta, 2) + std::pow(a.phi - ra.phi, 2);
        CHECK(p.feasible(c, t) == (sep2 > p.constraints().epsilon * p.constraints().epsilon));
      }
  }

  TEST_CASE("mirror cell earns the mainlobe reward on a level plane") {
    Scenario sc = small_scenario(16, 1, 3, 0.0);
    const AttackProblem p(sc, constraints(33, 17, 3));
    const int G = p.grid();
    int compared = 0;
    for (int iu = 0; iu < G; ++iu)
      for (int iv = 0; iv < G; ++iv) {
        const int c = iu * G + iv;
        const int m = (G - 1 - iu) * G + (G - 1 - iv);
        if (!p.in_region(c)) continue;
        REQUIRE(p.in_region(m));
        CHECK(p.angles(m).theta == Approx(-p.angles(c).theta).epsilon(1e-12));
        CHECK(p.angles(m).phi == Approx(-p.angles(c).phi).epsilon(1e-12));
        CHECK(p.reward(m, 1) == Approx(p.reward(c, 1)).epsilon(1e-9));
        ++compared;
      }
    CHECK(compared == G * G);
  }

  TEST_CASE("action sets") {
    Scenario sc = small_scenario(4, 1, 3, 0.0);
    const AttackProblem wide(sc, constraints(7, 1e6, 0));
    for (int c = 0; c < wide.cells(); ++c) {
      const auto acts = wide.valid_actions(c, 0);
      int feasible = 0;
      for (int d = 0; d < wide.cells(); ++d) feasible += wide.feasible(d, 1);
      CHECK(static_cast<int>(acts.size()) == feasible);
    }
    int feasible_cells = 0;
    for (int d = 0; d < wide.cells(); ++d) feasible_cells += wide.feasible(d, 1);
    CHECK(feasible_cells == wide.cells());

    const AttackProblem still(sc, constraints(7, 0, 3));
    for (int c = 0; c < still.cells(); ++c) {
      const auto acts = still.valid_actions(c, 0);
      if (still.feasible(c, 1))
        CHECK(acts == std::vector<int>{c});
      else
        CHECK(acts.empty());
    }

    const AttackProblem mid(sc, constraints(9, 400, 3));
    for (int c = 0; c < mid.cells(); c += 7) {
      const auto acts = mid.valid_actions(c, 1);
      const double rad = mid.constraints().step_radius(sc.t_s);
      for (int d = 0; d < mid.cells(); ++d) {
        const auto a = mid.coord(c), b = mid.coord(d);
        const bool ok = std::hypot(a.u - b.u, a.v - b.v) <= rad * (1 + 1e-9) && mid.feasible(d, 2);
        CHECK(ok == std::binary_search(acts.begin(), acts.end(), d));
      }
    }
  }

  TEST_CASE("value table base cases") {
    const Scenario one = small_scenario(4, 1, 1);
    const AttackProblem p1(one, constraints(5, 40, 3));
    const auto h1 = value_iteration(p1);
    for (int c = 0; c < p1.cells(); ++c) CHECK(h1.at(c, 0) == 0.0);
    const auto tr1 = extract_trajectory(p1, h1);
    CHECK(tr1.cells.size() == 1u);

    const Scenario sc = small_scenario(4, 1, 5);
    const AttackProblem single(sc, constraints(1, 17, 3));
    REQUIRE(single.cells() == 1);
    const auto h = value_iteration(single);
    for (int t = 0; t < single.steps(); ++t) {
      double tail = 0.0;
      bool ok = true;
      for (int tau = t + 1; tau < single.steps(); ++tau) {
        tail += single.reward(0, tau);
        ok = ok && single.feasible(0, tau);
      }
      if (ok)
        CHECK(h.at(0, t) == Approx(tail).epsilon(1e-12));
      else
        CHECK(h.at(0, t) == -std::numeric_limits<double>::infinity());
    }
    const auto tr = extract_trajectory(single, h);
    CHECK(tr.cells == std::vector<int>(5, 0));
  }

  TEST_CASE("Bellman consistency on random states") {
    const Scenario sc = small_scenario(8, 1, 10);
    const AttackProblem p(sc, constraints(16, 200, 4));
    const auto h = value_iteration(p);
    auto rng = make_rng(2024);
    std::uniform_int_distribution<int> pc(0, p.cells() - 1), pt(0, p.steps() - 1);
    for (int k = 0; k < 10000; ++k) {
      const int c = pc(rng);
      const int t = pt(rng);
      if (t == p.steps() - 1) {
        CHECK(h.at(c, t) == 0.0);
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int d = 0; d < p.cells(); ++d) {
        if (!p.feasible(d, t + 1) || !p.velocity_ok(c, d)) continue;
        best = std::max(best, p.reward(d, t + 1) + h.at(d, t + 1));
      }
      CHECK(h.at(c, t) == best);
    }
  }

  TEST_CASE("dynamic programming matches exhaustive enumeration") {
    struct Case {
      int n_t, q, steps, g;
      double v_max, eps, tilt;
    };
    const Case cases[] = {{4, 1, 4, 5, 40, 3, 15},  {4, 2, 4, 5, 60, 10, 15}, {8, 1, 3, 6, 30, 5, 0},
                          {8, 2, 5, 3, 50, 3, -10}, {4, 1, 5, 4, 25, 20, 15}, {8, 1, 2, 6, 1e4, 1, 15},
                          {4, 1, 3, 5, 0, 3, 15}};
    for (const auto& cs : cases) {
      const AttackProblem p(small_scenario(cs.n_t, cs.q, cs.steps, cs.tilt), constraints(cs.g, cs.v_max, cs.eps));
      const auto ref = oracle::enumerate_paths(p);
      CAPTURE(cs.g);
      CAPTURE(cs.steps);
      CAPTURE(cs.v_max);
      REQUIRE(ref.paths > 0);
      const auto h = value_iteration(p);
      const auto tr = extract_trajectory(p, h);
      CHECK(tr.total_reward == Approx(ref.best).epsilon(1e-12));
      CHECK(tr.total_reward == Approx(p.reward(tr.cells[0], 0) + h.at(tr.cells[0], 0)).epsilon(1e-12));
      double sum = 0.0;
      for (int t = p.steps() - 1; t >= 0; --t) sum = p.reward(tr.cells[static_cast<std::size_t>(t)], t) + sum;
      CHECK(sum == tr.total_reward);
      CHECK_NOTHROW(check_permissible(p, tr));
    }
  }

  TEST_CASE("permissibility checks") {
    const AttackProblem p(small_scenario(4, 1, 4), constraints(7, 40, 3));
    const auto tr = extract_trajectory(p, value_iteration(p));
    CHECK_NOTHROW(check_permissible(p, tr));
    Trajectory jump = tr;
    jump.cells[1] = 0;
    jump.cells[2] = p.cells() - 1;
    CHECK_THROWS_AS(check_permissible(p, jump), InfeasibleError);
    Trajectory shortt = tr;
    shortt.cells.pop_back();
    CHECK_THROWS_AS(check_permissible(p, shortt), InfeasibleError);

    const AttackProblem blocked(small_scenario(4, 1, 3), constraints(5, 40, 170));
    CHECK_THROWS_AS(extract_trajectory(blocked, value_iteration(blocked)), InfeasibleError);
  }

  TEST_CASE("one-bit eavesdropper tracks the mirror beam") {
    Scenario sc;
    AttackConstraints ac;
    ac.epsilon = deg2rad(20.0);
    const AttackProblem p(sc, ac);
    const auto tr = extract_trajectory(p, value_iteration(p));
    check_permissible(p, tr);
    int off = 0;
    for (int t = 0; t < p.steps(); ++t) {
      const auto rx = p.rx(t).grid;
      const auto e = nearest_grid(p.angles(tr.cells[static_cast<std::size_t>(t)]), sc.array);
      if (circ_dist(e.i, -rx.i, 16) > 1 || circ_dist(e.j, -rx.j, 16) > 1) ++off;
    }
    CHECK(off == 0);
  }

  TEST_CASE("secrecy profile signs") {
    Scenario sc;
    const AttackProblem p1(sc, AttackConstraints{});
    const auto tr1 = extract_trajectory(p1, value_iteration(p1));
    const auto prof1 = episode_secrecy_profile(p1, tr1);
    REQUIRE(prof1.size() == 41u);
    for (const auto& s : prof1) {
      CHECK(s.secrecy_rate <= 0.0);
      CHECK(s.secrecy_rate == Approx(s.rx_rate - s.eve_rate));
    }
    CHECK(prof1[20].t_s == Approx(0.5));

    sc.array.q = 2;
    const AttackProblem p2(sc, AttackConstraints{});
    const auto prof2 = episode_secrecy_profile(p2, extract_trajectory(p2, value_iteration(p2)));
    int nonpositive = 0;
    for (const auto& s : prof2) nonpositive += s.secrecy_rate <= 0.0;
    CHECK(nonpositive * 4 >= 3 * static_cast<int>(prof2.size()));

    // Parked at a null: the secrecy rate is the RX rate.
    Scenario s0;
    s0.array.q = kUnquantized;
    const AttackProblem p0(s0, constraints(9, 17, 3));
    Trajectory parked;
    for (int t = 0; t < p0.steps(); ++t) parked.cells.push_back(40);
    parked.steps.assign(parked.cells.size(), p0.coord(40));
    for (const auto& s : episode_secrecy_profile(p0, parked))
      CHECK(s.secrecy_rate == Approx(s.rx_rate - s.eve_rate));
  }

  TEST_CASE("trajectory CSV layout") {
    const AttackProblem p(small_scenario(4, 1, 3), constraints(5, 40, 3));
    const auto tr = extract_trajectory(p, value_iteration(p));
    const auto prof = episode_secrecy_profile(p, tr);
    std::ostringstream a, b;
    write_trajectory_csv(a, p, tr, prof);
    write_secrecy_csv(b, prof);
    CHECK(a.str().rfind("t_s,u,v,theta_deg,phi_deg,reward,secrecy_rate\n", 0) == 0);
    CHECK(b.str().rfind("t_s,rx_rate,eve_rate,secrecy_rate\n", 0) == 0);
    const std::string text = a.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
}
