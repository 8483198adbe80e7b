#include <benchmark/benchmark.h>

#include "hardylab/forms.hpp"
#include "hardylab/optimality.hpp"
#include "hardylab/sequence.hpp"

namespace {

void BM_IdentityReportCompensated(benchmark::State& state) {
    const auto probe =
        hardylab::regularized_ground_state(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hardylab::identity_report(probe));
    }
    state.SetItemsProcessed(state.iterations() * probe.support_size());
}

void BM_IdentityReportExtended(benchmark::State& state) {
    const auto probe =
        hardylab::regularized_ground_state(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hardylab::identity_report(probe, hardylab::SummationMode::extended(256)));
    }
    state.SetItemsProcessed(state.iterations() * probe.support_size());
}

void BM_ProbeRemainder(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hardylab::probe_remainder(static_cast<std::uint64_t>(state.range(0))));
    }
}

} // namespace

BENCHMARK(BM_IdentityReportCompensated)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_IdentityReportExtended)->Arg(16)->Arg(64);
BENCHMARK(BM_ProbeRemainder)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
