#include <benchmark/benchmark.h>

#include "convnls/ground_state.hpp"
#include "convnls/kernel_oracle.hpp"
#include "convnls/propagator.hpp"

using namespace convnls;

namespace {

void BM_strang_step(benchmark::State& state) {
    GridSpec g = make_grid(1, static_cast<int>(state.range(0)), 60.0);
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 0.5;
    Field u = classical_profiles(ProfileKind::Phi0, 1.0, g);
    for (auto _ : state) {
        u = strang_step(u, 1e-3, p, true);
        benchmark::DoNotOptimize(u.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_strang_step)->Arg(1 << 11)->Arg(1 << 14);

void BM_petviashvili_solve(benchmark::State& state) {
    GridSpec g = make_grid(1, 2048, 80.0);
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 0.25;
    p.omega = 1.0;
    SolveOptions o;
    o.tol = 1e-11;
    for (auto _ : state) {
        GroundState gs = petviashvili_solve(p, g, o);
        benchmark::DoNotOptimize(gs.residual);
    }
}
BENCHMARK(BM_petviashvili_solve)->Unit(benchmark::kMillisecond);

void BM_kernel_oracle(benchmark::State& state) {
    PhysicsParams p;
    p.beta = 0.25;
    p.eps = 1.0;
    p.omega = 1.0;
    for (auto _ : state) {
        OracleResult r = residue_kernel_oracle(5.0, p);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_kernel_oracle)->Unit(benchmark::kMillisecond);

void BM_decay_probe_1d(benchmark::State& state) {
    PhysicsParams p;
    p.beta = 0.5;
    p.eps = 1.0;
    GridSpec g = make_grid(1, 8192, 200.0);
    std::vector<double> times;
    for (int i = 0; i < 10; ++i)
        times.push_back(0.05 * std::pow(8.0, i / 9.0));
    for (auto _ : state) {
        DecayProbeResult r = decay_probe(16.0, p, g, times);
        benchmark::DoNotOptimize(r.fitted_slope);
    }
}
BENCHMARK(BM_decay_probe_1d)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
