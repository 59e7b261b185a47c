// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "csb/airspy.hpp"
#include "csb/channel.hpp"
#include "csb/defense.hpp"
#include "csb/mutual_info.hpp"

using namespace csb;

static void BM_ShiftedGainTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto cfg = ArrayConfig::square(n, 1);
  const auto f = steering_codeword({1, 2}, cfg);
  const auto v = array_response(0.3, -0.6, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(shifted_gain_table(v, f));
}
BENCHMARK(BM_ShiftedGainTable)->Arg(8)->Arg(16);

static void BM_PskMutualInformation(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  double rho = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psk_mutual_information(rho, m));
    rho = rho < 100.0 ? rho * 1.1 : 1.0;
  }
}
BENCHMARK(BM_PskMutualInformation)->Arg(2)->Arg(4)->Arg(16);

static void BM_SerChunk(benchmark::State& state) {
  LinkSnapshot l;
  l.array = ArrayConfig::square(16, 1);
  l.rx.angles = grid_angles({3, 2}, l.array);
  l.eve.angles = grid_angles({0, 0}, l.array);
  l.sigma2 = 1.0;
  const Defense d = state.range(0) == 0 ? Defense::none() : state.range(0) == 1 ? Defense::csb() : Defense::asm_c(0.5);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_ser_experiment(l, d, {4, 8192}, seed++));
  state.SetItemsProcessed(state.iterations() * 8192);
}
BENCHMARK(BM_SerChunk)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ValueIteration(benchmark::State& state) {
  Scenario sc;
  AttackConstraints ac;
  ac.grid_g = static_cast<int>(state.range(0));
  const AttackProblem p(sc, ac);
  for (auto _ : state) benchmark::DoNotOptimize(value_iteration(p));
}
BENCHMARK(BM_ValueIteration)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_AttackProblemSetup(benchmark::State& state) {
  Scenario sc;
  AttackConstraints ac;
  ac.grid_g = 64;
  for (auto _ : state) benchmark::DoNotOptimize(AttackProblem(sc, ac));
}
BENCHMARK(BM_AttackProblemSetup)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
