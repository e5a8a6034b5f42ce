// bench_pipeline.cpp — Microbenchmarks for the superoperator pipeline

#include "qds/spectral.hpp"
#include "qds/structure.hpp"
#include "qds/zoo.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_KrausToSuperop(benchmark::State& state) {
    const auto dim = static_cast<qds::Index>(state.range(0));
    const qds::QuantumChannel ch = qds::zoo::random_cptp(dim, 4, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::kraus_to_superop(ch.kraus));
    }
}
BENCHMARK(BM_KrausToSuperop)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_EigSuperop(benchmark::State& state) {
    const auto dim = static_cast<qds::Index>(state.range(0));
    const qds::QuantumChannel ch = qds::zoo::random_cptp(dim, 4, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::eig_superop(ch.superop, qds::TimeKind::discrete));
    }
}
BENCHMARK(BM_EigSuperop)->Arg(2)->Arg(4)->Arg(8);

void BM_Decompose(benchmark::State& state) {
    const qds::System system = qds::zoo::replica(2, qds::zoo::depolarizing(0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::decompose_structure(system));
    }
}
BENCHMARK(BM_Decompose);

void BM_Oracle(benchmark::State& state) {
    const qds::System system = qds::zoo::replica(2, qds::zoo::depolarizing(0.5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::minimal_enclosures_oracle(system, 100, 5));
    }
}
BENCHMARK(BM_Oracle);

void BM_ExpGenerator(benchmark::State& state) {
    const qds::LindbladGenerator gen = qds::zoo::random_lindblad(4, 3, 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::exp_generator(gen, 1.0));
    }
}
BENCHMARK(BM_ExpGenerator);

}  // namespace

BENCHMARK_MAIN();
