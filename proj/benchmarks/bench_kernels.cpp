#include <benchmark/benchmark.h>

#include "dform/experiments.hpp"
#include "dform/operators.hpp"
#include "dform/random_field.hpp"

using namespace dform;

namespace {

SpectralField sample(int n) {
    EnsembleSpec e;
    e.band = 0;
    return ensemble_member(e, n, 6.283185307179586, 0);
}

void BM_ToPhysical(benchmark::State& state) {
    const SpectralField u = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(to_physical(u));
}
BENCHMARK(BM_ToPhysical)->Arg(64)->Arg(128)->Arg(256);

void BM_Bilinear(benchmark::State& state) {
    const SpectralField u = sample(static_cast<int>(state.range(0)));
    const SpectralField v = 0.5 * u;
    for (auto _ : state) benchmark::DoNotOptimize(bilinear(u, v));
}
BENCHMARK(BM_Bilinear)->Arg(64)->Arg(128)->Arg(256);

void BM_BilinearSelf(benchmark::State& state) {
    const SpectralField u = sample(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bilinear_self(u));
}
BENCHMARK(BM_BilinearSelf)->Arg(64)->Arg(128)->Arg(256);

void BM_Interpolant(benchmark::State& state) {
    const SpectralField u = sample(128);
    const InterpolantSpec J{static_cast<InterpolantKind>(state.range(0)), static_cast<int>(state.range(1)), 0.25};
    for (auto _ : state) benchmark::DoNotOptimize(apply_interpolant(J, u));
    state.SetLabel(J.label());
}
BENCHMARK(BM_Interpolant)->Args({0, 40})->Args({1, 32})->Args({2, 32});

void BM_NseStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PhysicalParams p = kolmogorov_params(1.0, 6.283185307179586, 2, 5.0);
    SolverConfig c;
    c.resolution = n;
    c.dt = 0.005;
    c.integrator = static_cast<IntegratorKind>(state.range(1));
    const SpectralField u0 = steady_state(p, n) + sample(n);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_nse(u0, p, c, 10 * c.dt).final);
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_NseStep)->Args({64, 0})->Args({128, 0})->Args({128, 1});

}  // namespace

BENCHMARK_MAIN();
