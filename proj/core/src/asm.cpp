// SPDX-License-Identifier: Apache-2.0

#include "csb/asm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace csb {

int AsmConfig::active_count(int elements) const {
  if (!(c > 0.0) || c > 1.0) throw ConfigError("ASM: active fraction must lie in (0, 1]");
  const auto k = static_cast<int>(std::lround(c * elements));
  if (k < 1) throw ConfigError("ASM: active antenna count rounds to zero");
  return std::min(k, elements);
}

std::vector<int> draw_active_subset(int total, int active, Rng& rng) {
  if (total < 1 || active < 1 || active > total)
    throw ConfigError("draw_active_subset: bad subset size");
  std::vector<int> idx(static_cast<std::size_t>(total));
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates.
  for (int t = 0; t < active; ++t) {
    std::uniform_int_distribution<int> pick(t, total - 1);
    std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  idx.resize(static_cast<std::size_t>(active));
  std::sort(idx.begin(), idx.end());
  return idx;
}

CMatrix masked_beamformer(const CMatrix& f, const std::vector<int>& active) {
  CMatrix out(f.rows(), f.cols());
  auto src = f.flat();
  auto dst = out.flat();
  for (int a : active) dst[static_cast<std::size_t>(a)] = src[static_cast<std::size_t>(a)];
  return out;
}

cplx masked_gain(const CMatrix& v, const CMatrix& f, const std::vector<int>& active) {
  if (!v.same_shape(f)) throw ConfigError("masked_gain: shape mismatch");
  auto vf = v.flat();
  auto ff = f.flat();
  cplx acc{};
  for (int a : active)
    acc += vf[static_cast<std::size_t>(a)] * std::conj(ff[static_cast<std::size_t>(a)]);
  return acc;
}

AsmTransmission asm_transmit(const CMatrix& f, cplx x, const Angles& rx, const AsmConfig& cfg,
                             Rng& rng) {
  const int total = static_cast<int>(f.size());
  const int k = cfg.active_count(total);
  if (k == total) return {f, x};
  const auto active = draw_active_subset(total, k, rng);
  CMatrix fa = masked_beamformer(f, active);
  const cplx g_full = beam_gain(rx, f);
  const cplx g_asm = beam_gain(rx, fa);
  if (g_asm == cplx{} || g_full == cplx{}) return {std::move(fa), x};
  return {std::move(fa), x * std::polar(1.0, std::arg(g_full) - std::arg(g_asm))};
}

}  // namespace csb
