#include <benchmark/benchmark.h>

#include <random>

#include "convnls/multipliers.hpp"
#include "convnls/transform.hpp"

using namespace convnls;

namespace {

Field random_state(const GridSpec& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cplx> v(g.size());
    for (cplx& z : v) z = cplx{dist(rng), dist(rng)};
    return Field::unchecked(g, std::move(v));
}

void BM_transform_roundtrip_1d(benchmark::State& state) {
    GridSpec g = make_grid(1, static_cast<int>(state.range(0)), 100.0);
    Field u = random_state(g, 1);
    for (auto _ : state) {
        Field v = inverse(transform(u));
        benchmark::DoNotOptimize(v.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_transform_roundtrip_1d)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void BM_transform_roundtrip_2d(benchmark::State& state) {
    GridSpec g = make_grid(2, static_cast<int>(state.range(0)), 100.0);
    Field u = random_state(g, 2);
    for (auto _ : state) {
        Field v = inverse(transform(u));
        benchmark::DoNotOptimize(v.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_transform_roundtrip_2d)->Arg(256)->Arg(1024);

void BM_dispersion_multiplier(benchmark::State& state) {
    GridSpec g = make_grid(1, 1 << 16, 100.0);
    PhysicsParams p;
    p.beta = 0.25;
    Field u = random_state(g, 3);
    const MultiplierSymbol m = dispersion_symbol(p);
    for (auto _ : state) {
        Field v = apply_multiplier(u, m, 0.1, &p);
        benchmark::DoNotOptimize(v.values.data());
    }
}
BENCHMARK(BM_dispersion_multiplier);

} // namespace
