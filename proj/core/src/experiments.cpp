// SPDX-License-Identifier: Apache-2.0

#include "csb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "csb/asm.hpp"
#include "csb/csv.hpp"
#include "csb/mutual_info.hpp"
#include "csb/rng.hpp"
#include "parallel.hpp"

namespace csb {
namespace {

enum Stream : std::uint64_t { kSmiSubsets = 11, kSmiNoise = 12, kSerSeeds = 21 };

constexpr double kWavelength = 0.005;  // 60 GHz

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

double propagation_phase(double r) { return kTwoPi * (r / kWavelength - std::floor(r / kWavelength)); }

std::vector<double> sweep_points(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double v = lo + k * step;
    if (v > hi + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<BeamPatternOutput> run_beam_pattern(const ExperimentConfig& cfg) {
  const auto& b = cfg.beam_pattern;
  const auto grid = angle_grid_deg(b.theta_min_deg, b.theta_max_deg, b.phi_min_deg, b.phi_max_deg,
                                   b.step_deg);
  const Angles target{deg2rad(b.target_theta_deg), deg2rad(b.target_phi_deg)};
  std::vector<BeamPatternOutput> out;
  for (int q : {kUnquantized, 1, 2}) {
    const ArrayConfig ac{cfg.rows, cfg.cols, q};
    ac.validate();
    const CMatrix f = steering_codeword(nearest_grid(target, ac), ac);
    out.push_back({q, beam_pattern(f, grid)});
  }
  return out;
}

SmiSweep run_smi_sweep(const ExperimentConfig& cfg, int q, std::uint64_t seed) {
  const auto& s = cfg.smi;
  const ArrayConfig ac = ArrayConfig::linear(s.n_t, q);
  ac.validate();
  SmiSweep out;
  out.q = q;
  const Angles rx{deg2rad(s.rx_theta_deg), 0.0};
  const GridIndex rx_grid = nearest_grid(rx, ac);
  out.rx_grid = signed_index(rx_grid.i, ac.cols);
  const CMatrix f = steering_codeword(rx_grid, ac);
  const CMatrix v_rx = array_response(rx, ac);
  const cplx g_rx = beam_gain(v_rx, f);
  // A matched unquantized beam has |gain|^2 = elements.
  out.sigma2 = ac.elements() / db_to_linear(s.snr_db);

  std::vector<cplx> comp(static_cast<std::size_t>(ac.elements()));
  for (int n = 0; n < ac.cols; ++n)
    comp[static_cast<std::size_t>(n)] = std::conj(shift_phase_factor({0, n}, rx_grid, ac));
  auto csb_atoms = [&](const CMatrix& v) {
    auto t = shifted_gain_table(v, f);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] *= comp[k];
    return t;
  };

  Rng subset_rng = make_rng(seed, {kSmiSubsets, static_cast<std::uint64_t>(q)});
  std::vector<std::vector<std::vector<int>>> subsets;
  std::vector<std::vector<cplx>> rotations;
  for (double c : s.asm_c) {
    const int k = AsmConfig{c}.active_count(ac.elements());
    auto& set = subsets.emplace_back();
    auto& rot = rotations.emplace_back();
    for (int t = 0; t < s.asm_subsets; ++t) {
      set.push_back(draw_active_subset(ac.elements(), k, subset_rng));
      const cplx g = masked_gain(v_rx, f, set.back());
      rot.push_back(g == cplx{} ? cplx{1.0} : std::polar(1.0, std::arg(g_rx) - std::arg(g)));
    }
  }
  auto asm_atoms = [&](const CMatrix& v, std::size_t ci) {
    std::vector<cplx> a;
    for (std::size_t t = 0; t < subsets[ci].size(); ++t)
      a.push_back(masked_gain(v, f, subsets[ci][t]) * rotations[ci][t]);
    return a;
  };
  auto mi = [&](const std::vector<cplx>& atoms) {
    Rng rng = make_rng(seed, {kSmiNoise, static_cast<std::uint64_t>(q)});
    return mixture_channel_mi(atoms, out.sigma2, s.m_order, rng, s.samples);
  };
  auto mean_snr = [&](const std::vector<cplx>& atoms) {
    double acc = 0.0;
    for (auto a : atoms) acc += std::norm(a);
    return acc / static_cast<double>(atoms.size()) / out.sigma2;
  };

  const auto rx_csb = csb_atoms(v_rx);
  out.rx_mi_csb = mi(rx_csb);
  out.rx_snr_none = std::norm(g_rx) / out.sigma2;
  out.rx_snr_csb = mean_snr(rx_csb);
  for (std::size_t ci = 0; ci < s.asm_c.size(); ++ci) {
    const auto a = asm_atoms(v_rx, ci);
    out.rx_mi_asm.push_back(mi(a));
    out.rx_snr_asm.push_back(mean_snr(a));
  }

  // Uniform sweep merged with the on-grid directions.
  struct Point {
    double deg;
    bool on_grid;
    int i;
  };
  std::vector<Point> pts;
  for (double d : sweep_points(s.eve_theta_min_deg, s.eve_theta_max_deg, s.eve_step_deg))
    pts.push_back({d, false, 0});
  for (int i = -ac.cols / 2; i < ac.cols / 2; ++i) {
    const double d = rad2deg(grid_angle(mod(i, ac.cols), ac.cols));
    if (d < s.eve_theta_min_deg - 1e-9 || d > s.eve_theta_max_deg + 1e-9) continue;
    auto it = std::find_if(pts.begin(), pts.end(),
                           [&](const Point& p) { return std::abs(p.deg - d) < 1e-9; });
    if (it != pts.end()) {
      it->on_grid = true;
      it->i = i;
    } else {
      pts.push_back({d, true, i});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.deg < b.deg; });

  const double rx_mi_theory = psk_mutual_information(out.rx_snr_none, s.m_order);
  out.rows.resize(pts.size());
  detail::parallel_for(pts.size(), [&](std::size_t k) {
    const Point& p = pts[k];
    // Grid points use the exact grid angle so sin(theta) n / 2 is integral.
    const Angles eve{p.on_grid ? grid_angle(mod(p.i, ac.cols), ac.cols) : deg2rad(p.deg), 0.0};
    const CMatrix v_eve = array_response(eve, ac);
    SmiRow row;
    row.eve_theta_deg = p.deg;
    row.on_grid = p.on_grid;
    row.csb = std::max(out.rx_mi_csb - mi(csb_atoms(v_eve)), 0.0);
    for (std::size_t ci = 0; ci < s.asm_c.size(); ++ci)
      row.asm_smi.push_back(std::max(out.rx_mi_asm[ci] - mi(asm_atoms(v_eve, ci)), 0.0));
    if (p.on_grid) {
      row.g = std::abs(signed_index(mod(out.rx_grid - p.i, ac.cols), ac.cols));
      const double eve_snr = std::norm(beam_gain(v_eve, f)) / out.sigma2;
      const int eff = effective_psk_order(s.m_order, row.g, ac.cols);
      row.csb_theory = std::max(rx_mi_theory - psk_mutual_information(eve_snr, eff), 0.0);
    } else {
      row.csb_theory = std::numeric_limits<double>::quiet_NaN();
    }
    out.rows[k] = std::move(row);
  });
  return out;
}

void write_smi_csv(std::ostream& os, const SmiSweep& sweep, const std::vector<double>& asm_c) {
  os << "eve_theta_deg,on_grid,g,csb";
  for (double c : asm_c) os << ",asm_" << format_number(c);
  os << ",csb_theory\n";
  for (const auto& r : sweep.rows) {
    os << format_number(std::round(r.eve_theta_deg * 1e9) / 1e9) << ',' << (r.on_grid ? 1 : 0)
       << ',';
    if (r.on_grid) os << r.g;
    os << ',' << format_number(r.csb);
    for (double v : r.asm_smi) os << ',' << format_number(v);
    os << ',';
    if (r.on_grid) os << format_number(r.csb_theory);
    os << '\n';
  }
}

AttackOutput run_attack(const ExperimentConfig& cfg, int q) {
  AttackProblem p(make_scenario(cfg, q), make_constraints(cfg));
  const ValueTable vt = value_iteration(p);
  Trajectory tr = extract_trajectory(p, vt);
  auto prof = episode_secrecy_profile(p, tr);
  return {std::move(p), std::move(tr), std::move(prof)};
}

SerOutput run_ser(const ExperimentConfig& cfg, std::uint64_t seed) {
  const auto& s = cfg.ser;
  ExperimentConfig acfg = cfg;
  acfg.attack.epsilon_deg = s.eve_epsilon_deg;
  AttackOutput att = run_attack(acfg, s.q);
  const AttackProblem& p = att.problem;
  const Scenario& sc = p.scenario();
  const int steps = p.steps();
  const int mid = steps / 2;

  SerOutput out;
  out.eve_trajectory = att.trajectory;

  std::vector<LinkSnapshot> links(static_cast<std::size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    const RxState& rx = p.rx(t);
    const int c = att.trajectory.cells[static_cast<std::size_t>(t)];
    auto& l = links[static_cast<std::size_t>(t)];
    l.array = sc.array;
    l.rx = {rx.angles, path_power(rx.r, sc.p0, sc.r0), propagation_phase(rx.r)};
    l.eve = {p.angles(c), path_power(p.range(c), sc.p0, sc.r0), propagation_phase(p.range(c))};
  }
  const double ref_power =
      links[static_cast<std::size_t>(mid)].rx.p_r *
      std::norm(beam_gain(p.rx(mid).angles, p.beamformer(mid)));

  // Runs one defense over the whole episode at a given SNR point.
  auto episode = [&](double snr_db, std::size_t point, const Defense& d, int cap) {
    SerOptions opt;
    opt.m_order = s.m_order;
    opt.num_symbols = s.symbols_per_step;
    opt.constellation_cap = cap;
    SerResult total;
    double rx_snr = 0.0;
    for (int t = 0; t < steps; ++t) {
      LinkSnapshot l = links[static_cast<std::size_t>(t)];
      l.sigma2 = ref_power / db_to_linear(snr_db);
      const std::uint64_t sub = make_rng(seed, {kSerSeeds, point, static_cast<std::uint64_t>(t)})();
      opt.constellation_cap = t == mid ? cap : 0;
      const SerResult r = run_ser_experiment(l, d, opt, sub);
      total.trials += r.trials;
      total.rx_errors += r.rx_errors;
      total.eve_errors += r.eve_errors;
      rx_snr += r.mean_rx_snr * static_cast<double>(r.trials);
      total.eve_constellation.insert(total.eve_constellation.end(), r.eve_constellation.begin(),
                                     r.eve_constellation.end());
    }
    total.mean_rx_snr = rx_snr / static_cast<double>(total.trials);
    return total;
  };

  std::vector<Defense> curve{Defense::none(), Defense::csb()};
  for (double c : s.asm_c) curve.push_back(Defense::asm_c(c));
  const auto snrs = sweep_points(s.snr_min_db, s.snr_max_db, s.snr_step_db);
  for (std::size_t k = 0; k < snrs.size(); ++k) {
    for (const auto& d : curve) {
      const SerResult r = episode(snrs[k], k, d, 0);
      out.sweep.push_back({snrs[k], d.label(), r.rx_ser(), r.eve_ser(), r.trials});
    }
  }

  std::vector<Defense> table{Defense::none(), Defense::csb()};
  for (double c : s.table_asm_c) table.push_back(Defense::asm_c(c));
  const std::size_t table_point = snrs.size();
  for (const auto& d : table) {
    const int cap = d.kind == DefenseKind::Asm ? 0 : s.constellation_cap;
    SerResult r = episode(s.table_snr_db, table_point, d, cap);
    out.table.push_back({d.label(), d.kind == DefenseKind::Asm ? d.c : 1.0,
                         linear_to_db(r.mean_rx_snr), r.rx_ser(), r.eve_ser()});
    if (d.kind == DefenseKind::None) out.constellation_none = std::move(r.eve_constellation);
    if (d.kind == DefenseKind::Csb) out.constellation_csb = std::move(r.eve_constellation);
  }
  return out;
}

void write_ser_sweep_csv(std::ostream& os, const std::vector<SerSweepRow>& rows) {
  os << "snr_db,defense,rx_ser,eve_ser,trials\n";
  for (const auto& r : rows)
    os << format_number(r.snr_db) << ',' << r.defense << ',' << format_number(r.rx_ser) << ','
       << format_number(r.eve_ser) << ',' << r.trials << '\n';
}

void write_ser_table_csv(std::ostream& os, const std::vector<SerTableRow>& rows) {
  os << "defense,c,mean_rx_snr_db,rx_ser,eve_ser\n";
  for (const auto& r : rows)
    os << r.defense << ',' << format_number(r.c) << ',' << format_number(r.mean_rx_snr_db) << ','
       << format_number(r.rx_ser) << ',' << format_number(r.eve_ser) << '\n';
}

}  // namespace csb
