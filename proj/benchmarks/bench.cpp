#include "diqsdc/channel.hpp"
#include "diqsdc/chsh.hpp"
#include "diqsdc/epp.hpp"
#include "diqsdc/nla.hpp"
#include "diqsdc/protocol.hpp"

#include <benchmark/benchmark.h>

using namespace diqsdc;

static void BM_chsh_exact(benchmark::State& state) {
  const auto s = lose_photon(
      depolarize(SectoredTwoPhotonState::pure(BellState::PhiPlus), 0.95), 0.8, Photon::Check);
  for (auto _ : state) benchmark::DoNotOptimize(chsh_exact(s));
}
BENCHMARK(BM_chsh_exact);

static void BM_purify_step(benchmark::State& state) {
  const auto w = BellDiagonalState::werner(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(purify_step(w));
}
BENCHMARK(BM_purify_step);

static void BM_fock_nla_oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fock_nla_oracle(0.5));
}
BENCHMARK(BM_fock_nla_oracle);

static void BM_estimate_security(benchmark::State& state) {
  const StateMixture src{{1.0, depolarize(SectoredTwoPhotonState::pure(BellState::PhiPlus), 0.97)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_security(src, 50000, 42));
  }
  state.SetItemsProcessed(state.iterations() * 50000);
}
BENCHMARK(BM_estimate_security);

static void BM_run_original(benchmark::State& state) {
  ProtocolConfig cfg;
  cfg.n_pairs = static_cast<std::size_t>(state.range(0));
  cfg.channel = {.distance_km = 1.0, .p = 0.97};
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_original(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_original)->Arg(100000)->Arg(1000000);

BENCHMARK_MAIN();
