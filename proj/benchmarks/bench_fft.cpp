#include <benchmark/benchmark.h>

#include <random>

#include "multlab/fft.hpp"
#include "multlab/multiplier.hpp"

using namespace multlab;

namespace {

SampledField noise(const GridSpec& g) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    SampledField f(g, Domain::space);
    for (cplx& v : f.values()) v = cplx(n(rng), n(rng));
    return f;
}

void BM_DftForward1D(benchmark::State& state) {
    const SampledField f = noise(GridSpec(1, static_cast<std::size_t>(state.range(0)), 64.0));
    for (auto _ : state) benchmark::DoNotOptimize(dft_forward(f));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DftForward1D)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

void BM_DftForward2D(benchmark::State& state) {
    const SampledField f = noise(GridSpec(2, static_cast<std::size_t>(state.range(0)), 16.0));
    for (auto _ : state) benchmark::DoNotOptimize(dft_forward(f));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_DftForward2D)->RangeMultiplier(2)->Range(128, 1024);

void BM_ApplyMultiplier(benchmark::State& state) {
    const SampledField f = noise(GridSpec(1, static_cast<std::size_t>(state.range(0)), 64.0));
    MultiplierSpec chirp;
    chirp.name = "chirp";
    chirp.eval = [](const Point& xi) { return std::polar(1.0, xi[0] * xi[0]); };
    for (auto _ : state) benchmark::DoNotOptimize(apply_multiplier(chirp, f));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ApplyMultiplier)->RangeMultiplier(4)->Range(1 << 12, 1 << 18);

} // namespace
