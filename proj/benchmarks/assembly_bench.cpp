// Microbenchmarks on the three standard data sets at reduced scale.
// Run with --benchmark_filter to select; the full-scale sweep with CSV
// output is the `sparse_asm bench` command.

#include <benchmark/benchmark.h>

#include <map>

#include "sparse_asm/sparse_asm.hpp"

namespace {

using namespace sparse_asm;

constexpr double scale = 0.2;

const TripletList& dataset(int id) {
    static std::map<int, TripletList> cache;
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, gen_ransparse(dataset_config(id, scale))).first;
    return it->second;
}

void set_counters(benchmark::State& state, const TripletList& t) {
    state.SetItemsProcessed(state.iterations() * std::int64_t(t.size()));
    state.counters["L"] = double(t.size());
}

void BM_Serial(benchmark::State& state) {
    const AssemblyRequest req{dataset(int(state.range(0))), std::nullopt, std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(assemble_serial(req));
    set_counters(state, req.triplets);
}

void BM_Parallel(benchmark::State& state) {
    const AssemblyRequest req{dataset(int(state.range(0))), std::nullopt, std::nullopt};
    const int p = int(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_parallel(req, p));
    set_counters(state, req.triplets);
}

void BM_Oracle(benchmark::State& state) {
    const AssemblyRequest req{dataset(int(state.range(0))), std::nullopt, std::nullopt};
    for (auto _ : state) benchmark::DoNotOptimize(assemble_oracle(req));
    set_counters(state, req.triplets);
}

void BM_StreamCopy(benchmark::State& state) {
    const auto n = std::size_t(state.range(0));
    const int p = int(state.range(1));
    for (auto _ : state) {
        const auto r = stream_copy_bandwidth(n, p, 1);
        state.SetIterationTime(r.parallel_seconds);
    }
    state.SetBytesProcessed(state.iterations() * std::int64_t(2 * n * sizeof(double)));
}

}  // namespace

BENCHMARK(BM_Serial)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{1, 2, 3}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_Oracle)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StreamCopy)
    ->ArgsProduct({{1 << 22}, {1, 2, 4, 8}})
    ->UseManualTime()
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
