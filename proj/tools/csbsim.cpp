// SPDX-License-Identifier: Apache-2.0
//
// csbsim: command-line driver for the CSB / AirSpy experiments.
// Exit codes: 0 success, 1 configuration error, 2 infeasible attack,
// 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "csb/config.hpp"
#include "csb/csv.hpp"
#include "csb/defense.hpp"
#include "csb/experiments.hpp"

namespace fs = std::filesystem;
using namespace csb;

namespace {

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  bool tiny = false;
};

void add_common(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--config", a.config, "Configuration file (key = value with [sections])");
  sub->add_option("--seed", a.seed, "Master seed; overrides [run] seed");
  sub->add_option("--out", a.out, "Output directory")->capture_default_str();
  sub->add_flag("--tiny", a.tiny, "Oracle-scale instances");
}

ExperimentConfig resolve(const CommonArgs& a) {
  ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : load_config(a.config);
  if (a.tiny) cfg = tiny_config(cfg);
  if (a.seed) cfg.seed = a.seed;
  if (!cfg.seed) throw ConfigError("a seed is required: pass --seed or set [run] seed");
  cfg.validate();
  return cfg;
}

fs::path prepare_out(const CommonArgs& a, const ExperimentConfig& cfg) {
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  auto os = open_output(dir / "resolved_config.ini");
  write_config(os, cfg);
  return dir;
}

template <class Fn>
void emit(const fs::path& path, Fn&& fn) {
  auto os = open_output(path);
  fn(os);
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

std::string q_name(int q) { return q == kUnquantized ? "qinf" : "q" + std::to_string(q); }

void cmd_beam_pattern(const CommonArgs& a) {
  const auto cfg = resolve(a);
  const auto dir = prepare_out(a, cfg);
  for (const auto& bp : run_beam_pattern(cfg))
    emit(dir / ("beam_pattern_" + q_name(bp.q) + ".csv"),
         [&](std::ostream& os) { write_beam_pattern_csv(os, bp.samples); });
}

void cmd_smi_sweep(const CommonArgs& a) {
  const auto cfg = resolve(a);
  const auto dir = prepare_out(a, cfg);
  std::ofstream summary = open_output(dir / "smi_rx.csv");
  summary << "q,defense,c,rx_mi,rx_snr_db\n";
  for (int q : cfg.smi.q_list) {
    const SmiSweep sw = run_smi_sweep(cfg, q, *cfg.seed);
    emit(dir / ("smi_" + q_name(q) + ".csv"),
         [&](std::ostream& os) { write_smi_csv(os, sw, cfg.smi.asm_c); });
    auto db = [](double x) { return format_number(10.0 * std::log10(x)); };
    summary << q << ",csb,1," << format_number(sw.rx_mi_csb) << ',' << db(sw.rx_snr_csb) << '\n';
    for (std::size_t k = 0; k < cfg.smi.asm_c.size(); ++k)
      summary << q << ",asm," << format_number(cfg.smi.asm_c[k]) << ','
              << format_number(sw.rx_mi_asm[k]) << ',' << db(sw.rx_snr_asm[k]) << '\n';
  }
  summary.flush();
  if (!summary) throw IoError("failed writing smi_rx.csv");
}

void cmd_attack(const CommonArgs& a) {
  const auto cfg = resolve(a);
  const auto dir = prepare_out(a, cfg);
  for (int q : cfg.attack.q_list) {
    const AttackOutput r = run_attack(cfg, q);
    emit(dir / ("trajectory_" + q_name(q) + ".csv"), [&](std::ostream& os) {
      write_trajectory_csv(os, r.problem, r.trajectory, r.profile);
    });
    emit(dir / ("secrecy_" + q_name(q) + ".csv"),
         [&](std::ostream& os) { write_secrecy_csv(os, r.profile); });
  }
}

void cmd_ser(const CommonArgs& a) {
  const auto cfg = resolve(a);
  const auto dir = prepare_out(a, cfg);
  const SerOutput r = run_ser(cfg, *cfg.seed);
  emit(dir / "ser_sweep.csv", [&](std::ostream& os) { write_ser_sweep_csv(os, r.sweep); });
  emit(dir / "ser_table.csv", [&](std::ostream& os) { write_ser_table_csv(os, r.table); });
  emit(dir / "constellation_none.csv",
       [&](std::ostream& os) { write_constellation_csv(os, r.constellation_none); });
  emit(dir / "constellation_csb.csv",
       [&](std::ostream& os) { write_constellation_csv(os, r.constellation_csb); });
}

struct ApnArgs {
  std::optional<int> delta_i;
  std::optional<int> delta_j;
  std::optional<int> n_t;
  std::optional<int> m_order;
};

void cmd_apn(const CommonArgs& a, const ApnArgs& x) {
  auto cfg = resolve(a);
  if (x.delta_i) cfg.apn.delta_i = *x.delta_i;
  if (x.delta_j) cfg.apn.delta_j = *x.delta_j;
  if (x.n_t) cfg.apn.n_t = *x.n_t;
  if (x.m_order) cfg.apn.m_order = *x.m_order;
  cfg.validate();
  const auto dir = prepare_out(a, cfg);
  const ApnLaw law = apn_law(cfg.apn.delta_i, cfg.apn.delta_j, cfg.apn.n_t);
  const PartitionReport rep = partition_report(cfg.apn.m_order, law.g, cfg.apn.n_t);
  emit(dir / "apn.csv", [&](std::ostream& os) { write_apn_csv(os, law); });
  emit(dir / "apn.json", [&](std::ostream& os) { write_apn_json(os, law, rep); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circulant shift beamforming defense and AirSpy attack simulator"};
  app.require_subcommand(1);

  CommonArgs bp, smi, att, ser, apn;
  ApnArgs apn_x;
  auto* s_bp = app.add_subcommand("beam-pattern", "Normalized beam patterns for q = inf, 1, 2");
  auto* s_smi = app.add_subcommand("smi-sweep", "SMI versus eavesdropper angle, CSB vs ASM");
  auto* s_att = app.add_subcommand("attack", "AirSpy trajectory and secrecy profile");
  auto* s_ser = app.add_subcommand("ser", "SER versus SNR for none / CSB / ASM-c");
  auto* s_apn = app.add_subcommand("apn-dist", "Artificial phase noise law and partition");
  add_common(s_bp, bp);
  add_common(s_smi, smi);
  add_common(s_att, att);
  add_common(s_ser, ser);
  add_common(s_apn, apn);
  s_apn->add_option("--delta-i", apn_x.delta_i, "Azimuth grid offset");
  s_apn->add_option("--delta-j", apn_x.delta_j, "Elevation grid offset");
  s_apn->add_option("--n-t", apn_x.n_t, "Array size per dimension");
  s_apn->add_option("--m", apn_x.m_order, "PSK order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*s_bp) cmd_beam_pattern(bp);
    if (*s_smi) cmd_smi_sweep(smi);
    if (*s_att) cmd_attack(att);
    if (*s_ser) cmd_ser(ser);
    if (*s_apn) cmd_apn(apn, apn_x);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const GeometryError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
