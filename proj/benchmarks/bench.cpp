#include <benchmark/benchmark.h>

#include "biphoton/coherency.hpp"
#include "biphoton/experiment.hpp"
#include "biphoton/fock.hpp"
#include "biphoton/protocol.hpp"
#include "biphoton/random.hpp"

using namespace biphoton;

static void BM_ExpectMoment(benchmark::State& state) {
  const FockSpace space = build_space(static_cast<int>(state.range(0)));
  Rng rng(1);
  const FockState fock = embed_qutrit(random_pure_state(rng), space);
  const auto word = defining_word(Moment::D);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expect_moment(fock, word));
  }
}
BENCHMARK(BM_ExpectMoment)->Arg(2)->Arg(4)->Arg(8);

static void BM_CoincidenceRate(benchmark::State& state) {
  const FockSpace space = build_space(2);
  Rng rng(2);
  const FockState fock = embed_qutrit(random_pure_state(rng), space);
  const ArmCovector arm1 = arm_covector(0.3, -0.7);
  const ArmCovector arm2 = arm_covector(-0.2, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_rate(fock, arm1, arm2));
  }
}
BENCHMARK(BM_CoincidenceRate);

static void BM_SimulateProtocol(benchmark::State& state) {
  Rng rng(3);
  const QutritState qutrit = random_pure_state(rng);
  const auto settings = table1_settings();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(qutrit, settings));
  }
}
BENCHMARK(BM_SimulateProtocol);

static void BM_InvertRoundTrip(benchmark::State& state) {
  Rng rng(4);
  const QutritState qutrit = random_pure_state(rng);
  const MomentVector m = simulate(qutrit, table1_settings());
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert(m));
  }
}
BENCHMARK(BM_InvertRoundTrip);

static void BM_RunSweepExact(benchmark::State& state) {
  SweepConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(cfg));
  }
}
BENCHMARK(BM_RunSweepExact);

BENCHMARK_MAIN();
