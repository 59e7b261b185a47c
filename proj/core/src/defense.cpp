// SPDX-License-Identifier: Apache-2.0

#include "csb/defense.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "csb/csv.hpp"

namespace csb {

CMatrix circulant_shift(const CMatrix& a, ShiftPair s) {
  const int rows = a.rows();
  const int cols = a.cols();
  CMatrix out(rows, cols);
  for (int k = 0; k < rows; ++k) {
    const int src_k = mod(k - s.m, rows);
    for (int l = 0; l < cols; ++l) out(k, l) = a(src_k, mod(l - s.n, cols));
  }
  return out;
}

cplx shift_phase_factor(ShiftPair s, const GridIndex& g, const ArrayConfig& cfg) {
  // Reduce to a single rational phase p / (rows * cols) so the factor is
  // exact for every representable shift.
  const long long den = static_cast<long long>(cfg.rows) * cfg.cols;
  const long long num = static_cast<long long>(mod(s.m, cfg.rows)) * mod(g.j, cfg.rows) * cfg.cols +
                        static_cast<long long>(mod(s.n, cfg.cols)) * mod(g.i, cfg.cols) * cfg.rows;
  const double ang = -kTwoPi * static_cast<double>(num % den) / static_cast<double>(den);
  return std::polar(1.0, ang);
}

cplx compensated_symbol(cplx x, ShiftPair s, const GridIndex& rx, const ArrayConfig& cfg) {
  return x * std::conj(shift_phase_factor(s, rx, cfg));
}

ShiftPair draw_shift(const ArrayConfig& cfg, Rng& rng) {
  std::uniform_int_distribution<int> row(0, cfg.rows - 1);
  std::uniform_int_distribution<int> col(0, cfg.cols - 1);
  const int m = row(rng);
  const int n = col(rng);
  return {m, n};
}

CsbTransmission csb_transmit(const CMatrix& f, cplx x, const GridIndex& rx,
                             const ArrayConfig& cfg, Rng& rng) {
  if (f.rows() != cfg.rows || f.cols() != cfg.cols)
    throw ConfigError("csb_transmit: beamformer shape does not match array");
  const ShiftPair s = draw_shift(cfg, rng);
  return {circulant_shift(f, s), compensated_symbol(x, s, rx, cfg), s};
}

std::vector<cplx> shifted_gain_table(const CMatrix& v, const CMatrix& f) {
  if (!v.same_shape(f)) throw ConfigError("shifted_gain_table: shape mismatch");
  std::vector<cplx> table(f.size());
  for (int m = 0; m < f.rows(); ++m)
    for (int n = 0; n < f.cols(); ++n)
      table[static_cast<std::size_t>(m) * f.cols() + n] = beam_gain(v, circulant_shift(f, {m, n}));
  return table;
}

int apn_phase_index(ShiftPair s, int delta_i, int delta_j, int n_t) {
  if (n_t < 1) throw ConfigError("apn_phase_index: n_t must be positive");
  const long long k = static_cast<long long>(s.m) * delta_j + static_cast<long long>(s.n) * delta_i;
  const long long r = k % n_t;
  return static_cast<int>(r < 0 ? r + n_t : r);
}

std::vector<double> ApnLaw::phases() const {
  std::vector<double> out;
  out.reserve(support.size());
  for (int k : support) out.push_back(kTwoPi * k / n_t);
  return out;
}

ApnLaw apn_law(int delta_i, int delta_j, int n_t) {
  if (n_t < 1) throw ConfigError("apn_law: n_t must be positive");
  ApnLaw law;
  law.n_t = n_t;
  law.delta_i = delta_i;
  law.delta_j = delta_j;
  law.g = std::gcd(delta_i, delta_j);
  const int step = std::gcd(n_t, law.g);  // gcd(n_t, 0) = n_t: point mass
  for (int k = 0; k < n_t; k += step) law.support.push_back(k);
  law.prob_num = step;
  law.prob_den = n_t;
  const int r = std::gcd(law.prob_num, law.prob_den);
  law.prob_num /= r;
  law.prob_den /= r;
  return law;
}

void write_apn_csv(std::ostream& os, const ApnLaw& law) {
  os << "phase_deg,probability\n";
  const double p = law.probability();
  for (int k : law.support)
    os << format_number(360.0 * k / law.n_t) << ',' << format_number(p) << '\n';
}

double PartitionReport::distinguishable_bits() const {
  return num_classes > 0 ? std::log2(static_cast<double>(num_classes)) : 0.0;
}

PartitionReport partition_report(int m_order, int g, int n_t) {
  if (m_order < 2 || !std::has_single_bit(static_cast<unsigned>(m_order)))
    throw ConfigError("partition_report: M must be a power of two >= 2");
  if (n_t < 1) throw ConfigError("partition_report: n_t must be positive");
  PartitionReport rep;
  rep.m_order = m_order;
  rep.support_size = n_t / std::gcd(n_t, g);
  rep.class_size = std::gcd(rep.support_size, m_order);
  rep.num_classes = m_order / rep.class_size;
  rep.classes.resize(static_cast<std::size_t>(rep.num_classes));
  for (int r = 0; r < rep.num_classes; ++r)
    for (int t = 0; t < rep.class_size; ++t)
      rep.classes[static_cast<std::size_t>(r)].push_back(r + rep.num_classes * t);
  return rep;
}

void write_apn_json(std::ostream& os, const ApnLaw& law, const PartitionReport& report) {
  nlohmann::ordered_json j;
  j["n_t"] = law.n_t;
  j["delta_i"] = law.delta_i;
  j["delta_j"] = law.delta_j;
  j["g"] = law.g;
  j["support_indices"] = law.support;
  nlohmann::ordered_json deg = nlohmann::ordered_json::array();
  for (int k : law.support) deg.push_back(360.0 * k / law.n_t);
  j["support_phase_deg"] = deg;
  j["probability"] = {{"num", law.prob_num}, {"den", law.prob_den}};
  j["partition"] = {{"m_order", report.m_order},
                    {"support_size", report.support_size},
                    {"class_size", report.class_size},
                    {"num_classes", report.num_classes},
                    {"distinguishable_bits", report.distinguishable_bits()},
                    {"classes", report.classes}};
  os << j.dump(2) << '\n';
}

}  // namespace csb
