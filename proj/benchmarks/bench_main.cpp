// Microbenchmarks for the hot paths: flow integration, chirped transforms,
// and tau-quantization kernels.
#include <benchmark/benchmark.h>

#include "hamlift/correspondence.hpp"
#include "hamlift/flow.hpp"
#include "hamlift/metaplectic.hpp"
#include "hamlift/weyl.hpp"

using namespace hamlift;

static void BM_FlowOscillator(benchmark::State& state) {
    const auto H = presets::oscillator();
    for (auto _ : state) {
        benchmark::DoNotOptimize(flow_point(H, PhaseSpacePoint(1.0, 0.0), 0.0, 2 * M_PI,
                                            static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_FlowOscillator)->Arg(1000)->Arg(4000);

static void BM_Variational(benchmark::State& state) {
    const auto H = presets::pendulum();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            integrate_variational(H, PhaseSpacePoint(1.0, 0.5), 0.0, 1.0,
                                  static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_Variational)->Arg(1000);

static void BM_QuadraticFourier(benchmark::State& state) {
    const Grid g(state.range(0), -12.0, 12.0, 1.0);
    const WaveFunction psi = coherent_state(g, 0.5, -0.3);
    const auto W = QuadraticGeneratingFunction::scalar(0.3, 1.1, -0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_quadratic_fourier(W, psi));
    }
}
BENCHMARK(BM_QuadraticFourier)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_TauOperatorMatrix(benchmark::State& state) {
    const Grid g(state.range(0), -12.0, 12.0, 1.0);
    const Symbol a = symbols::gaussian(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tau_operator_matrix(a, 0.5, g));
    }
}
BENCHMARK(BM_TauOperatorMatrix)->Arg(128)->Arg(256);

static void BM_SplitStep(benchmark::State& state) {
    const Grid g(512, -12.0, 12.0, 1.0);
    const WaveFunction psi = coherent_state(g, 1.0, 0.0);
    const auto H = QuadraticHamiltonian::scalar(1, 0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_schrodinger(H, psi, 1.0,
                                                       static_cast<int>(state.range(0)),
                                                       PropagationMethod::split_step));
    }
}
BENCHMARK(BM_SplitStep)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
