// SPDX-License-Identifier: Apache-2.0

#include "csb/config.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "csb/csv.hpp"

namespace csb {
namespace {

using Target = std::variant<double*, int*, long long*, std::vector<double>*, std::vector<int>*,
                            std::optional<std::uint64_t>*>;

struct Binding {
  std::string_view section;
  std::string_view key;
  Target target;
};

// Single table shared by parsing and serialization; order is output order.
std::vector<Binding> bindings(ExperimentConfig& c) {
  auto& s = c.scenario;
  auto& a = c.attack;
  auto& b = c.beam_pattern;
  auto& m = c.smi;
  auto& r = c.ser;
  auto& p = c.apn;
  return {
      {"run", "seed", &c.seed},
      {"array", "rows", &c.rows},
      {"array", "cols", &c.cols},
      {"scenario", "tilt_deg", &s.tilt_deg},
      {"scenario", "h", &s.h},
      {"scenario", "lane_x", &s.lane_x},
      {"scenario", "rx_speed", &s.rx_speed},
      {"scenario", "y_start", &s.y_start},
      {"scenario", "y_end", &s.y_end},
      {"scenario", "t_s", &s.t_s},
      {"scenario", "sigma2", &s.sigma2},
      {"scenario", "p0", &s.p0},
      {"scenario", "r0", &s.r0},
      {"attack", "d", &a.d},
      {"attack", "beta_deg", &a.beta_deg},
      {"attack", "v_max", &a.v_max},
      {"attack", "epsilon_deg", &a.epsilon_deg},
      {"attack", "grid_g", &a.grid_g},
      {"attack", "q_list", &a.q_list},
      {"beam_pattern", "target_theta_deg", &b.target_theta_deg},
      {"beam_pattern", "target_phi_deg", &b.target_phi_deg},
      {"beam_pattern", "theta_min_deg", &b.theta_min_deg},
      {"beam_pattern", "theta_max_deg", &b.theta_max_deg},
      {"beam_pattern", "phi_min_deg", &b.phi_min_deg},
      {"beam_pattern", "phi_max_deg", &b.phi_max_deg},
      {"beam_pattern", "step_deg", &b.step_deg},
      {"smi", "n_t", &m.n_t},
      {"smi", "rx_theta_deg", &m.rx_theta_deg},
      {"smi", "snr_db", &m.snr_db},
      {"smi", "m_order", &m.m_order},
      {"smi", "q_list", &m.q_list},
      {"smi", "asm_c", &m.asm_c},
      {"smi", "eve_theta_min_deg", &m.eve_theta_min_deg},
      {"smi", "eve_theta_max_deg", &m.eve_theta_max_deg},
      {"smi", "eve_step_deg", &m.eve_step_deg},
      {"smi", "samples", &m.samples},
      {"smi", "asm_subsets", &m.asm_subsets},
      {"ser", "q", &r.q},
      {"ser", "m_order", &r.m_order},
      {"ser", "snr_min_db", &r.snr_min_db},
      {"ser", "snr_max_db", &r.snr_max_db},
      {"ser", "snr_step_db", &r.snr_step_db},
      {"ser", "symbols_per_step", &r.symbols_per_step},
      {"ser", "asm_c", &r.asm_c},
      {"ser", "table_asm_c", &r.table_asm_c},
      {"ser", "table_snr_db", &r.table_snr_db},
      {"ser", "eve_epsilon_deg", &r.eve_epsilon_deg},
      {"ser", "constellation_cap", &r.constellation_cap},
      {"apn", "n_t", &p.n_t},
      {"apn", "delta_i", &p.delta_i},
      {"apn", "delta_j", &p.delta_j},
      {"apn", "m_order", &p.m_order},
  };
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_scalar(std::string_view text, std::string_view what) {
  text = trim(text);
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ConfigError("config: invalid value '" + std::string(text) + "' for " + std::string(what));
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ConfigError("config: non-finite value for " + std::string(what));
  }
  return v;
}

template <class T>
std::vector<T> parse_list(std::string_view text, std::string_view what) {
  std::vector<T> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_scalar<T>(text.substr(pos, comma - pos), what));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

void assign(Target& t, std::string_view value, std::string_view what) {
  std::visit(
      [&](auto* p) {
        using P = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<P, double> || std::is_same_v<P, int> ||
                      std::is_same_v<P, long long>) {
          *p = parse_scalar<P>(value, what);
        } else if constexpr (std::is_same_v<P, std::optional<std::uint64_t>>) {
          *p = parse_scalar<std::uint64_t>(value, what);
        } else {
          *p = parse_list<typename P::value_type>(value, what);
        }
      },
      t);
}

std::string render(const Target& t) {
  return std::visit(
      [](auto* p) -> std::string {
        using P = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<P, double>) {
          return format_number(*p);
        } else if constexpr (std::is_same_v<P, int> || std::is_same_v<P, long long>) {
          return std::to_string(*p);
        } else if constexpr (std::is_same_v<P, std::optional<std::uint64_t>>) {
          return p->has_value() ? std::to_string(**p) : std::string();
        } else {
          std::string s;
          for (std::size_t i = 0; i < p->size(); ++i) {
            if (i) s += ',';
            if constexpr (std::is_same_v<typename P::value_type, double>)
              s += format_number((*p)[i]);
            else
              s += std::to_string((*p)[i]);
          }
          return s;
        }
      },
      t);
}

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(std::string("config: ") + msg);
}

bool valid_q(int q) { return q >= 0 && q <= 16; }
bool psk_order(int m) { return m >= 2 && std::has_single_bit(static_cast<unsigned>(m)); }

}  // namespace

void ExperimentConfig::validate() const {
  ArrayConfig{rows, cols, kUnquantized}.validate();
  make_scenario(*this, 1).validate();
  make_constraints(*this).validate();
  require(!attack.q_list.empty(), "attack.q_list must not be empty");
  for (int q : attack.q_list) require(valid_q(q), "attack.q_list entries must lie in [0, 16]");

  const auto& b = beam_pattern;
  require(b.step_deg > 0.0, "beam_pattern.step_deg must be positive");
  require(b.theta_min_deg <= b.theta_max_deg && b.phi_min_deg <= b.phi_max_deg,
          "beam_pattern ranges must be ordered");
  require(std::abs(b.theta_min_deg) <= 90 && std::abs(b.theta_max_deg) <= 90 &&
              std::abs(b.phi_min_deg) <= 90 && std::abs(b.phi_max_deg) <= 90,
          "beam_pattern angles must lie in [-90, 90]");

  const auto& m = smi;
  ArrayConfig::linear(m.n_t, kUnquantized).validate();
  require(std::abs(m.rx_theta_deg) < 90, "smi.rx_theta_deg must lie in (-90, 90)");
  require(psk_order(m.m_order), "smi.m_order must be a power of two >= 2");
  require(!m.q_list.empty(), "smi.q_list must not be empty");
  for (int q : m.q_list) require(valid_q(q), "smi.q_list entries must lie in [0, 16]");
  for (double c : m.asm_c) require(c > 0.0 && c <= 1.0, "smi.asm_c entries must lie in (0, 1]");
  require(m.eve_step_deg > 0.0, "smi.eve_step_deg must be positive");
  require(m.eve_theta_min_deg <= m.eve_theta_max_deg && m.eve_theta_min_deg >= -90 &&
              m.eve_theta_max_deg <= 90,
          "smi eavesdropper range must be ordered within [-90, 90]");
  require(m.samples >= 1 && m.asm_subsets >= 1, "smi.samples and smi.asm_subsets must be positive");

  const auto& r = ser;
  require(valid_q(r.q), "ser.q must lie in [0, 16]");
  require(psk_order(r.m_order), "ser.m_order must be a power of two >= 2");
  require(r.snr_step_db > 0.0 && r.snr_min_db <= r.snr_max_db, "ser SNR sweep must be ordered");
  require(r.symbols_per_step >= 1, "ser.symbols_per_step must be positive");
  for (double c : r.asm_c) require(c > 0.0 && c <= 1.0, "ser.asm_c entries must lie in (0, 1]");
  for (double c : r.table_asm_c)
    require(c > 0.0 && c <= 1.0, "ser.table_asm_c entries must lie in (0, 1]");
  require(r.eve_epsilon_deg >= 0.0, "ser.eve_epsilon_deg must be non-negative");
  require(r.constellation_cap >= 0 && r.constellation_cap <= 10000,
          "ser.constellation_cap must lie in [0, 10000]");

  require(apn.n_t >= 1, "apn.n_t must be positive");
  require(psk_order(apn.m_order), "apn.m_order must be a power of two >= 2");
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  auto table = bindings(cfg);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view sv = line;
    if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (sv.front() == '[') {
      if (sv.back() != ']') throw ConfigError("config: malformed section header" + where);
      section = std::string(trim(sv.substr(1, sv.size() - 2)));
      bool known = false;
      for (const auto& b : table) known = known || b.section == section;
      if (!known) throw ConfigError("config: unknown section [" + section + "]" + where);
      continue;
    }
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) throw ConfigError("config: expected key = value" + where);
    const auto key = trim(sv.substr(0, eq));
    const auto value = trim(sv.substr(eq + 1));
    bool found = false;
    for (auto& b : table) {
      if (b.section == section && b.key == key) {
        assign(b.target, value, section + "." + std::string(key) + where);
        found = true;
        break;
      }
    }
    if (!found)
      throw ConfigError("config: unknown key '" + std::string(key) + "' in [" + section + "]" + where);
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse_config(in);
}

void write_config(std::ostream& os, const ExperimentConfig& cfg) {
  ExperimentConfig copy = cfg;
  std::string_view section;
  for (const auto& b : bindings(copy)) {
    if (b.section != section) {
      if (!section.empty()) os << '\n';
      section = b.section;
      os << '[' << section << "]\n";
    }
    const std::string v = render(b.target);
    if (std::holds_alternative<std::optional<std::uint64_t>*>(b.target) && v.empty()) continue;
    os << b.key << " = " << v << '\n';
  }
}

ExperimentConfig tiny_config(ExperimentConfig cfg) {
  cfg.rows = 4;
  cfg.cols = 4;
  cfg.beam_pattern.step_deg = 10.0;
  cfg.beam_pattern.target_theta_deg = 0.0;
  cfg.beam_pattern.target_phi_deg = 0.0;
  cfg.attack.grid_g = 5;
  cfg.attack.v_max = 40.0;
  auto& s = cfg.scenario;
  s.t_s = (s.y_end - s.y_start) / (3.0 * s.rx_speed);
  cfg.smi.eve_step_deg = 10.0;
  cfg.smi.samples = 400;
  cfg.smi.asm_subsets = 8;
  cfg.ser.snr_min_db = -10.0;
  cfg.ser.snr_max_db = 30.0;
  cfg.ser.snr_step_db = 10.0;
  cfg.ser.symbols_per_step = 200;
  cfg.ser.table_asm_c = {0.3, 0.5, 0.7};
  cfg.ser.constellation_cap = 200;
  return cfg;
}

Scenario make_scenario(const ExperimentConfig& cfg, int q) {
  Scenario sc;
  sc.array = ArrayConfig{cfg.rows, cfg.cols, q};
  const auto& s = cfg.scenario;
  sc.theta_tilt = deg2rad(s.tilt_deg);
  sc.h = s.h;
  sc.lane_x = s.lane_x;
  sc.rx_speed = s.rx_speed;
  sc.y_start = s.y_start;
  sc.y_end = s.y_end;
  sc.t_s = s.t_s;
  sc.sigma2 = s.sigma2;
  sc.p0 = s.p0;
  sc.r0 = s.r0;
  return sc;
}

AttackConstraints make_constraints(const ExperimentConfig& cfg) {
  AttackConstraints ac;
  ac.plane.d = cfg.attack.d;
  ac.plane.beta = deg2rad(cfg.attack.beta_deg);
  ac.plane.theta_tilt = deg2rad(cfg.scenario.tilt_deg);
  ac.v_max = cfg.attack.v_max;
  ac.epsilon = deg2rad(cfg.attack.epsilon_deg);
  ac.grid_g = cfg.attack.grid_g;
  return ac;
}

}  // namespace csb
