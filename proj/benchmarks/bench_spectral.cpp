#include <benchmark/benchmark.h>

#include "hardylab/spectral.hpp"
#include "hardylab/weights.hpp"

namespace {

void BM_SmallestEigenvalue(benchmark::State& state) {
    const auto form = hardylab::build_form(static_cast<std::size_t>(state.range(0)),
                                           hardylab::WeightTable{hardylab::WeightKind::kpp()});
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardylab::smallest_eigenvalue(form, 1e-12));
    }
}

void BM_FactorizationResidual(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hardylab::factorization_residual(static_cast<std::size_t>(state.range(0))));
    }
}

} // namespace

BENCHMARK(BM_SmallestEigenvalue)->Arg(2000)->Arg(20000);
BENCHMARK(BM_FactorizationResidual)->Arg(2000);

BENCHMARK_MAIN();
