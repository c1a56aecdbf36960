// Serial reference vs OpenMP Nystrom kernel, and the full construction on top of each.
#include <benchmark/benchmark.h>

#include <cmath>

#include "isospec/forward_solver.hpp"
#include "isospec/gelfand_levitan.hpp"

using namespace isospec;

namespace {

struct Setup {
  OperatorSpec base{Potential::sample(Grid(2000), [](double x) { return x * (pi - x) / 5.0; }),
                    RobinAngles(pi / 3, 2 * pi / 3)};
  SpectrumTable spec = eigenvalues(base, 12);
  PerturbationSeq c{{0.1, 0.0, -0.2, 0.0, 0.15}};
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void run_nystrom(benchmark::State& state, nystrom::Execution exec) {
  const int m = static_cast<int>(state.range(0));
  const Grid g(m);
  const KernelF F = build_kernel_from_coeffs(setup().base, setup().spec, setup().c, g);
  for (auto _ : state) {
    auto out = nystrom::solve(F.values, g.step(), nystrom::Rule::gregory, exec);
    benchmark::DoNotOptimize(out.max_residual);
  }
  state.SetComplexityN(m);
}

void BM_NystromSerial(benchmark::State& state) { run_nystrom(state, nystrom::Execution::serial); }
void BM_NystromParallel(benchmark::State& state) { run_nystrom(state, nystrom::Execution::parallel); }

void run_construct(benchmark::State& state, nystrom::Execution exec) {
  GLOptions opts;
  opts.gl_intervals = static_cast<int>(state.range(0));
  opts.execution = exec;
  for (auto _ : state) {
    const OperatorSpec op = isospectral_construct(setup().base, setup().c, opts);
    benchmark::DoNotOptimize(op.angles.cot_beta());
  }
}

void BM_ConstructSerial(benchmark::State& state) { run_construct(state, nystrom::Execution::serial); }
void BM_ConstructParallel(benchmark::State& state) { run_construct(state, nystrom::Execution::parallel); }

}  // namespace

BENCHMARK(BM_NystromSerial)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_NystromParallel)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_ConstructSerial)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ConstructParallel)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
