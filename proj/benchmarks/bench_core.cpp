// SPDX-License-Identifier: MIT

#include <benchmark/benchmark.h>

#include <vector>

#include "vcnls/analysis.hpp"
#include "vcnls/residual.hpp"
#include "vcnls/simulate.hpp"
#include "vcnls/solutions.hpp"
#include "vcnls/symmetry.hpp"

namespace {

using namespace vcnls;

void BM_ProfileIntegral(benchmark::State& state) {
    const double p = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(profile_integral(1.0, p));
}
BENCHMARK(BM_ProfileIntegral)->Arg(3)->Arg(4)->Arg(6);

void BM_ProfileIntegralCompactified(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(profile_integral_compactified(1.0, 4.0));
}
BENCHMARK(BM_ProfileIntegralCompactified);

void BM_Pairing(benchmark::State& state) {
    const auto phi = BumpFunction::unit_peak(0.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(pairing(4.0, 1e-3, 1.0, 1.0, phi));
}
BENCHMARK(BM_Pairing);

void BM_LinfNorm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(linf_norm(1.0, 1.0, 1e-3));
}
BENCHMARK(BM_LinfNorm);

void BM_ResidualLadder(benchmark::State& state) {
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0, -1.0);
    const std::vector<ProbePoint> probes{{0.5, 0.1}, {1.0, 0.1}, {2.0, 0.1}, {4.0, 0.1}};
    const std::vector<double> spacings{0.04, 0.02, 0.01, 0.005};
    const auto psi = spec.as_field();
    for (auto _ : state) benchmark::DoNotOptimize(convergence_order(spec.equation(), psi, probes, spacings));
}
BENCHMARK(BM_ResidualLadder);

void BM_LieBrackets(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(structure_constants_report());
}
BENCHMARK(BM_LieBrackets);

void BM_SplitStep(benchmark::State& state) {
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0, -1.0);
    SimulationConfig config;
    config.coefficients = PdeCoefficients::from(spec.equation());
    config.grid = SpatialGrid(0.05, 10.0, static_cast<std::size_t>(state.range(0)));
    config.boundary = spec.as_field();
    const SplitStepSolver solver(config);
    auto field = ComplexField::sample(config.grid, spec.as_field(), 0.0);
    for (auto _ : state) {
        auto next = solver.step(field);
        benchmark::DoNotOptimize(next);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SplitStep)->Arg(1000)->Arg(9951);

}  // namespace

BENCHMARK_MAIN();
