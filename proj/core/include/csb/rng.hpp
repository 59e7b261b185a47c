// SPDX-License-Identifier: Apache-2.0
//
// Seeded random sources. Every stochastic routine takes an explicit engine;
// independent streams are derived from a master seed plus stream labels so
// results do not depend on how work is split across threads.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <cmath>
#include <random>

#include "csb/types.hpp"

namespace csb {

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> streams = {});

/// CN(0, variance) sampler.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double variance) : normal_(0.0, std::sqrt(variance / 2.0)) {}
  cplx operator()(Rng& rng) {
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {re, im};
  }

 private:
  std::normal_distribution<double> normal_;
};

}  // namespace csb
