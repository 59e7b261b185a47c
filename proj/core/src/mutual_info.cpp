// SPDX-License-Identifier: Apache-2.0

#include "csb/mutual_info.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

namespace csb {
namespace {

constexpr int kMaxRule = 256;

// Newton iteration on the orthonormal Hermite recurrence with the classic
// asymptotic initial guesses.
GaussHermiteRule build_rule(int n) {
  GaussHermiteRule r;
  r.nodes.assign(static_cast<std::size_t>(n), 0.0);
  r.weights.assign(static_cast<std::size_t>(n), 0.0);
  const double pim4 = 1.0 / std::pow(kPi, 0.25);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0)
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1)
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2)
      z = 1.86 * z - 0.86 * r.nodes[0];
    else if (i == 3)
      z = 1.91 * z - 0.91 * r.nodes[1];
    else
      z = 2.0 * z - r.nodes[static_cast<std::size_t>(i - 2)];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = z;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
    r.weights[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    r.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / (pp * pp);
  }
  if (n % 2 == 1) r.nodes[static_cast<std::size_t>(half - 1)] = 0.0;
  return r;
}

// log2 sum_m exp(e_m) with e_0 = 0 among the terms.
double log2_sum_exp(const double* e, int count) {
  const double mx = *std::max_element(e, e + count);
  double s = 0.0;
  for (int m = 0; m < count; ++m) s += std::exp(e[m] - mx);
  return (mx + std::log(s)) / std::numbers::ln2;
}

double psk_mi_with_rule(double rho, int m_order, const GaussHermiteRule& rule) {
  const double amp = std::sqrt(rho);
  std::vector<cplx> d(static_cast<std::size_t>(m_order));
  std::vector<double> dnorm(d.size());
  for (int m = 0; m < m_order; ++m) {
    d[static_cast<std::size_t>(m)] = amp * (1.0 - std::polar(1.0, kTwoPi * m / m_order));
    dnorm[static_cast<std::size_t>(m)] = std::norm(d[static_cast<std::size_t>(m)]);
  }
  std::vector<double> e(d.size());
  const int n = static_cast<int>(rule.nodes.size());
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const cplx z(rule.nodes[static_cast<std::size_t>(a)], rule.nodes[static_cast<std::size_t>(b)]);
      for (std::size_t m = 0; m < d.size(); ++m)
        e[m] = -dnorm[m] - 2.0 * std::real(d[m] * std::conj(z));
      acc += rule.weights[static_cast<std::size_t>(a)] * rule.weights[static_cast<std::size_t>(b)] *
             log2_sum_exp(e.data(), m_order);
    }
  }
  return std::log2(static_cast<double>(m_order)) - acc / kPi;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1 || n > kMaxRule) throw ConfigError("gauss_hermite: node count out of range");
  static std::array<std::once_flag, kMaxRule + 1> flags;
  static std::array<GaussHermiteRule, kMaxRule + 1> rules;
  const auto idx = static_cast<std::size_t>(n);
  std::call_once(flags[idx], [&] { rules[idx] = build_rule(n); });
  return rules[idx];
}

MiEstimate psk_mutual_information_detail(double rho, int m_order) {
  if (m_order < 1) throw ConfigError("psk_mutual_information: M must be positive");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw ConfigError("psk_mutual_information: SNR must be finite and non-negative");
  if (m_order == 1 || rho == 0.0) return {0.0, 0};
  int n = 8;
  double prev = psk_mi_with_rule(rho, m_order, gauss_hermite(n));
  while (n < 128) {
    n *= 2;
    const double cur = psk_mi_with_rule(rho, m_order, gauss_hermite(n));
    const bool done = std::abs(cur - prev) < 1e-5;
    prev = cur;
    if (done) break;
  }
  const double cap = std::log2(static_cast<double>(m_order));
  return {std::clamp(prev, 0.0, cap), n};
}

double psk_mutual_information(double rho, int m_order) {
  return psk_mutual_information_detail(rho, m_order).bits;
}

int effective_psk_order(int m_order, int g, int n_t) {
  if (m_order < 1 || n_t < 1) throw ConfigError("effective_psk_order: bad arguments");
  const int support = n_t / std::gcd(n_t, g);
  return m_order / std::gcd(support, m_order);
}

double smi(double rx_snr, double eve_snr, int m_order, int g, int n_t) {
  const double rx = psk_mutual_information(rx_snr, m_order);
  const double eve = psk_mutual_information(eve_snr, effective_psk_order(m_order, g, n_t));
  return std::max(rx - eve, 0.0);
}

double mixture_channel_mi(std::span<const cplx> atoms, double sigma2, int m_order, Rng& rng,
                          int samples) {
  if (atoms.empty()) throw ConfigError("mixture_channel_mi: empty atom set");
  if (!(sigma2 > 0.0)) throw ConfigError("mixture_channel_mi: noise variance must be positive");
  if (m_order < 1 || samples < 1) throw ConfigError("mixture_channel_mi: bad arguments");
  if (m_order == 1) return 0.0;
  // By rotational symmetry of PSK the conditional MI is the same for every
  // transmitted symbol, so x = 1 is sent throughout.
  std::vector<cplx> sym(static_cast<std::size_t>(m_order));
  for (int k = 0; k < m_order; ++k) sym[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * k / m_order);
  const std::size_t na = atoms.size();
  ComplexGaussian noise(sigma2);
  std::vector<double> all(na * sym.size());
  double acc = 0.0;
  for (int s = 0; s < samples; ++s) {
    const cplx y = atoms[static_cast<std::size_t>(s) % na] + noise(rng);
    for (std::size_t k = 0; k < sym.size(); ++k)
      for (std::size_t a = 0; a < na; ++a)
        all[k * na + a] = -std::norm(y - atoms[a] * sym[k]) / sigma2;
    const double log_num = log2_sum_exp(all.data(), static_cast<int>(na));
    const double log_den = log2_sum_exp(all.data(), static_cast<int>(all.size())) -
                           std::log2(static_cast<double>(m_order));
    acc += log_num - log_den;
  }
  return std::clamp(acc / samples, 0.0, std::log2(static_cast<double>(m_order)));
}

}  // namespace csb
