#include <benchmark/benchmark.h>

#include "shiftdyn/constructors.hpp"
#include "shiftdyn/criteria.hpp"
#include "shiftdyn/orbit_lab.hpp"
#include "shiftdyn/shift_ops.hpp"

using namespace shiftdyn;

namespace {

const OperatorSpec kStep(ShiftKind::kBilateralForward, WeightSequence::step(0.5, 2.0));
const IndexSet kEvens(2, {0});

void BM_PowerProductBlocks(benchmark::State& state) {
  const OperatorSpec op(ShiftKind::kBilateralForward,
                        WeightSequence::block_interleaved(0.5, 2.0, {2, 4, 8, 16, 32}));
  const Index n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(power_product(op, -n / 2, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_PowerProductBlocks)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

void BM_ForwardTraces(benchmark::State& state) {
  const auto sched = PowerSchedule::arithmetic(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eq65_forward(kStep, kEvens, 0, sched));
}
BENCHMARK(BM_ForwardTraces)->Arg(32)->Arg(256)->Arg(2048);

void BM_Herrero(benchmark::State& state) {
  HerreroParams p;
  p.lengths = {2, 4, 8, 16, 32};
  for (auto _ : state) benchmark::DoNotOptimize(herrero_construction(p));
}
BENCHMARK(BM_Herrero);

void BM_DensityExperiment(benchmark::State& state) {
  const Example2B ex = paper_example_2B();
  const std::vector<SparseVector> grid{unit(1), SparseVector{{1, -1.0}}, unit(3),
                                       SparseVector{{3, -1.0}}};
  const CriterionVector cv = build_criterion_vector(
      ex.op, ex.space, grid, 1e-2, PowerSchedule::arithmetic(2, 500));
  const auto window = TruncationWindow::of_size(Domain::kUnilateral, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        density_experiment(ex.op, ex.space, cv.x, grid, 1e-2, 2000, window));
  }
}
BENCHMARK(BM_DensityExperiment)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
