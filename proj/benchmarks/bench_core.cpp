#include <benchmark/benchmark.h>

#include "addcomb/compression.hpp"
#include "addcomb/constructions.hpp"
#include "addcomb/pointset_ops.hpp"
#include "addcomb/search.hpp"

using namespace addcomb;

static void BM_SumsetSimplexLine(benchmark::State& state) {
    PointSet a = simplex_line(static_cast<int>(state.range(0)), 8);
    for (auto _ : state) benchmark::DoNotOptimize(sumset(a, a));
}
BENCHMARK(BM_SumsetSimplexLine)->Arg(2)->Arg(3)->Arg(4);

static void BM_DifferenceBox(benchmark::State& state) {
    PointSet a = box(3, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(difference_set(a, a));
}
BENCHMARK(BM_DifferenceBox)->Arg(1)->Arg(2)->Arg(3);

static void BM_AffineDim(benchmark::State& state) {
    PointSet a = random_subset(4, 12, 3, 99);
    for (auto _ : state) benchmark::DoNotOptimize(affine_dim(a));
}
BENCHMARK(BM_AffineDim);

static void BM_Compress(benchmark::State& state) {
    PointSet a = random_subset(3, 24, 3, 7);
    CompressionDirection v(Point{1, -1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(compress(a, v));
}
BENCHMARK(BM_Compress);

static void BM_CanonicalForm(benchmark::State& state) {
    PointSet a = random_subset(static_cast<int>(state.range(0)), 8, 2, 42);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(a));
}
BENCHMARK(BM_CanonicalForm)->Arg(2)->Arg(3)->Arg(4);

static void BM_ExhaustiveScan(benchmark::State& state) {
    SearchSpace space;
    space.dim = 2;
    space.extent = 2;
    space.n_lo = 3;
    space.n_hi = static_cast<std::size_t>(state.range(0));
    space.objective = Objective::bound(BoundKind::fhu_difference);
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_scan(space));
}
BENCHMARK(BM_ExhaustiveScan)->Arg(4)->Arg(5)->Arg(6);

BENCHMARK_MAIN();
