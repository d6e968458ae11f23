#include <benchmark/benchmark.h>

#include <random>

#include "multlab/families.hpp"
#include "multlab/norms.hpp"

using namespace multlab;

namespace {

SampledField noise(std::size_t m) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    SampledField f(GridSpec(1, m, 64.0), Domain::space);
    for (cplx& v : f.values()) v = cplx(n(rng), n(rng));
    return f;
}

void BM_Lp(benchmark::State& state) {
    const SampledField f = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lp_value(f, 1.5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lp)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Lorentz(benchmark::State& state) {
    const SampledField f = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lorentz_p2_quasinorm(f, 1.5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lorentz)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_Sobolev(benchmark::State& state) {
    const SampledField f = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(f, 4.0, 0.5));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sobolev)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void BM_HormanderRademacher(benchmark::State& state) {
    const FramePair frame;
    const MultiplierSpec sigma = rademacher_symbol(static_cast<int>(state.range(0)), SignTable(3));
    for (auto _ : state) benchmark::DoNotOptimize(hormander_norm(sigma, 4.0, 0.5, frame, {-2, 2}));
}
BENCHMARK(BM_HormanderRademacher)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_BesovNorm(benchmark::State& state) {
    const FramePair frame;
    const SampledField f = noise(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, 2.0, 1.0, 0.5, frame));
}
BENCHMARK(BM_BesovNorm)->RangeMultiplier(8)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond);

} // namespace
