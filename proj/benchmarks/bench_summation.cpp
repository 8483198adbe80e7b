#include <benchmark/benchmark.h>

#include <vector>

#include "hardylab/summation.hpp"

namespace {

std::vector<double> make_terms(std::size_t count) {
    std::vector<double> terms(count);
    std::uint64_t state = 0x5eed;
    for (auto& t : terms) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        t = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    return terms;
}

void BM_SumNaive(benchmark::State& state) {
    const auto terms = make_terms(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardylab::sum(terms, hardylab::SummationMode::naive()));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SumCompensated(benchmark::State& state) {
    const auto terms = make_terms(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardylab::sum(terms, hardylab::SummationMode::compensated()));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SumExtended(benchmark::State& state) {
    const auto terms = make_terms(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardylab::sum(terms, hardylab::SummationMode::extended(256)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_SumNaive)->Arg(1 << 10)->Arg(1 << 20);
BENCHMARK(BM_SumCompensated)->Arg(1 << 10)->Arg(1 << 20);
BENCHMARK(BM_SumExtended)->Arg(1 << 10)->Arg(1 << 16);

BENCHMARK_MAIN();
