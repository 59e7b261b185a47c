// SPDX-License-Identifier: Apache-2.0

#include "csb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "csb/asm.hpp"
#include "csb/csv.hpp"
#include "csb/defense.hpp"
#include "csb/rng.hpp"
#include "parallel.hpp"

namespace csb {

void LinkState::validate() const {
  if (!(p_r >= 0.0) || !std::isfinite(p_r)) throw ConfigError("LinkState: p_r must be >= 0");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw ConfigError("LinkState: sigma2 must be > 0");
}

PskConstellation::PskConstellation(int m_order) {
  if (m_order < 1) throw ConfigError("PskConstellation: order must be positive");
  symbols_.reserve(static_cast<std::size_t>(m_order));
  for (int k = 0; k < m_order; ++k) symbols_.push_back(std::polar(1.0, kTwoPi * k / m_order));
}

int PskConstellation::nearest(cplx z) const {
  int best = 0;
  double best_d = std::norm(z - symbols_[0]);
  for (std::size_t k = 1; k < symbols_.size(); ++k) {
    const double d = std::norm(z - symbols_[k]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

cplx received_symbol(const LinkState& link, const CMatrix& v, const CMatrix& f, cplx x,
                     cplx noise) {
  return received_symbol(link, beam_gain(v, f), x, noise);
}

cplx received_symbol(const LinkState& link, cplx gain, cplx x, cplx noise) {
  return std::sqrt(link.p_r) * std::polar(1.0, link.nu) * gain * x + noise;
}

double path_power(double r, double p0, double r0) {
  if (!(r > 0.0)) throw ConfigError("path_power: distance must be positive");
  const double ratio = r0 / r;
  return p0 * ratio * ratio;
}

std::optional<int> equalize_and_detect(cplx y, cplx h_hat, const PskConstellation& constellation) {
  if (h_hat == cplx{}) return std::nullopt;
  return constellation.nearest(y / h_hat);
}

std::string Defense::label() const {
  switch (kind) {
    case DefenseKind::None: return "none";
    case DefenseKind::Csb: return "csb";
    case DefenseKind::Asm: return "asm_" + format_number(c);
  }
  return "unknown";
}

namespace {

enum Stream : std::uint64_t { kSymbols = 1, kRxNoise = 2, kEveNoise = 3, kDefense = 4 };

struct ChunkTally {
  long long rx_errors = 0;
  long long eve_errors = 0;
  double rx_snr_sum = 0.0;
  double eve_snr_sum = 0.0;
  std::vector<ConstellationPoint> constellation;
  std::vector<long long> rx_error_positions;
};

}  // namespace

SerResult run_ser_experiment(const LinkSnapshot& link, const Defense& defense,
                             const SerOptions& options, std::uint64_t seed) {
  link.array.validate();
  if (options.num_symbols < 1) throw ConfigError("run_ser_experiment: need at least one symbol");
  if (options.chunk_size < 1) throw ConfigError("run_ser_experiment: chunk size must be positive");
  if (!(link.sigma2 > 0.0)) throw ConfigError("run_ser_experiment: sigma2 must be positive");
  if (options.constellation_cap < 0 || options.constellation_cap > 10000)
    throw ConfigError("run_ser_experiment: constellation cap must lie in [0, 10000]");
  const PskConstellation psk(options.m_order);
  const ArrayConfig& cfg = link.array;

  const GridIndex rx_grid = nearest_grid(link.rx.angles, cfg);
  const CMatrix f = steering_codeword(rx_grid, cfg);
  const CMatrix v_rx = array_response(link.rx.angles, cfg);
  const CMatrix v_eve = array_response(link.eve.angles, cfg);
  const cplx g_rx = beam_gain(v_rx, f);
  const cplx g_eve = beam_gain(v_eve, f);
  const cplx amp_rx = std::sqrt(link.rx.p_r) * std::polar(1.0, link.rx.nu);
  const cplx amp_eve = std::sqrt(link.eve.p_r) * std::polar(1.0, link.eve.nu);
  const cplx h_rx = amp_rx * g_rx;
  const cplx h_eve = amp_eve * g_eve;

  std::vector<cplx> tab_rx;
  std::vector<cplx> tab_eve;
  std::vector<cplx> comp;
  int asm_active = 0;
  if (defense.kind == DefenseKind::Csb) {
    tab_rx = shifted_gain_table(v_rx, f);
    tab_eve = shifted_gain_table(v_eve, f);
    comp.resize(tab_rx.size());
    for (int m = 0; m < cfg.rows; ++m)
      for (int n = 0; n < cfg.cols; ++n)
        comp[static_cast<std::size_t>(m) * cfg.cols + n] =
            std::conj(shift_phase_factor({m, n}, rx_grid, cfg));
  } else if (defense.kind == DefenseKind::Asm) {
    asm_active = AsmConfig{defense.c}.active_count(cfg.elements());
  }

  const long long total = options.num_symbols;
  const auto chunks = static_cast<std::size_t>((total + options.chunk_size - 1) / options.chunk_size);
  std::vector<ChunkTally> tallies(chunks);

  detail::parallel_for(chunks, [&](std::size_t ci) {
    const long long begin = static_cast<long long>(ci) * options.chunk_size;
    const long long end = std::min(total, begin + options.chunk_size);
    Rng sym_rng = make_rng(seed, {kSymbols, ci});
    Rng rx_rng = make_rng(seed, {kRxNoise, ci});
    Rng eve_rng = make_rng(seed, {kEveNoise, ci});
    Rng def_rng = make_rng(seed, {kDefense, ci});
    std::uniform_int_distribution<int> pick_symbol(0, psk.order() - 1);
    std::uniform_int_distribution<int> pick_row(0, cfg.rows - 1);
    std::uniform_int_distribution<int> pick_col(0, cfg.cols - 1);
    ComplexGaussian noise(link.sigma2);
    ChunkTally& t = tallies[ci];

    for (long long s = begin; s < end; ++s) {
      const int k = pick_symbol(sym_rng);
      const cplx x = psk.symbol(k);
      cplx gr = g_rx;
      cplx ge = g_eve;
      cplx xt = x;
      switch (defense.kind) {
        case DefenseKind::None: break;
        case DefenseKind::Csb: {
          const int m = pick_row(def_rng);
          const int n = pick_col(def_rng);
          const std::size_t idx = static_cast<std::size_t>(m) * cfg.cols + n;
          gr = tab_rx[idx];
          ge = tab_eve[idx];
          xt = x * comp[idx];
          break;
        }
        case DefenseKind::Asm: {
          const auto active = draw_active_subset(cfg.elements(), asm_active, def_rng);
          gr = masked_gain(v_rx, f, active);
          ge = masked_gain(v_eve, f, active);
          if (gr != cplx{} && g_rx != cplx{}) xt = x * std::polar(1.0, std::arg(g_rx) - std::arg(gr));
          break;
        }
      }
      const cplx y_rx = amp_rx * gr * xt + noise(rx_rng);
      const cplx y_eve = amp_eve * ge * xt + noise(eve_rng);
      t.rx_snr_sum += link.rx.p_r * std::norm(gr) / link.sigma2;
      t.eve_snr_sum += link.eve.p_r * std::norm(ge) / link.sigma2;

      const auto d_rx = equalize_and_detect(y_rx, h_rx, psk);
      if (!d_rx || *d_rx != k) {
        ++t.rx_errors;
        if (options.record_rx_errors) t.rx_error_positions.push_back(s);
      }
      const auto d_eve = equalize_and_detect(y_eve, h_eve, psk);
      if (!d_eve || *d_eve != k) ++t.eve_errors;
      if (s < options.constellation_cap && h_eve != cplx{})
        t.constellation.push_back({y_eve / h_eve, k});
    }
  });

  SerResult res;
  res.trials = total;
  double rx_sum = 0.0;
  double eve_sum = 0.0;
  for (auto& t : tallies) {
    res.rx_errors += t.rx_errors;
    res.eve_errors += t.eve_errors;
    rx_sum += t.rx_snr_sum;
    eve_sum += t.eve_snr_sum;
    res.eve_constellation.insert(res.eve_constellation.end(), t.constellation.begin(),
                                 t.constellation.end());
    res.rx_error_positions.insert(res.rx_error_positions.end(), t.rx_error_positions.begin(),
                                  t.rx_error_positions.end());
  }
  res.mean_rx_snr = rx_sum / static_cast<double>(total);
  res.mean_eve_snr = eve_sum / static_cast<double>(total);
  return res;
}

void write_constellation_csv(std::ostream& os, const std::vector<ConstellationPoint>& points) {
  os << "re,im,true_symbol_index\n";
  for (const auto& p : points)
    os << format_number(p.z.real()) << ',' << format_number(p.z.imag()) << ',' << p.true_index
       << '\n';
}

}  // namespace csb
