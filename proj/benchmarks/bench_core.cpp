// bench_core.cpp — timings of the main numerical kernels
#include <benchmark/benchmark.h>

#include "mottlc/critical.hpp"
#include "mottlc/gutzwiller.hpp"
#include "mottlc/wigner.hpp"

using namespace mottlc;

namespace {

ModelParams fig1(double J = 0.0)
{
    ModelParams p;
    p.kappa = 1e-3;
    p.r = 100.0;
    p.mu_eff = 0.5;
    p.J = J;
    return p;
}

void BM_BuildGenerator(benchmark::State& state)
{
    const auto p = fig1();
    const FockSpace space(static_cast<int>(state.range(0)));
    const auto spec = state.range(1) ? ReservoirSpec::redfield(p) : ReservoirSpec::square(p);
    for (auto _ : state) benchmark::DoNotOptimize(build_generator(space, p, spec));
}
BENCHMARK(BM_BuildGenerator)->Args({6, 0})->Args({6, 1})->Args({12, 0})->Args({12, 1});

void BM_Eigendecompose(benchmark::State& state)
{
    const auto p = fig1();
    const auto L = build_generator(FockSpace(static_cast<int>(state.range(0))), p,
                                   ReservoirSpec::square(p));
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(L));
}
BENCHMARK(BM_Eigendecompose)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_RpaCritical(benchmark::State& state)
{
    const auto p = fig1();
    const auto spec = ReservoirSpec::square(p);
    for (auto _ : state) benchmark::DoNotOptimize(rpa_critical(p, spec, 6));
}
BENCHMARK(BM_RpaCritical)->Unit(benchmark::kMillisecond);

void BM_EvolveShort(benchmark::State& state)
{
    const auto p = fig1(0.12);
    const FockSpace space(6);
    const auto L0 = build_generator(space, fig1(), ReservoirSpec::square(p));
    const auto rho0 = coherent_state(space, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(evolve(L0, p, rho0, 100.0));
}
BENCHMARK(BM_EvolveShort)->Unit(benchmark::kMillisecond);

void BM_Wigner(benchmark::State& state)
{
    const auto rho = coherent_state(FockSpace(10), 1.2);
    const WignerAxes axes{-3, 3, -3, 3, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(wigner(rho, axes));
}
BENCHMARK(BM_Wigner)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
