#include "ainf/fixtures.hpp"
#include "ainf/resolution.hpp"
#include "ainf/trees.hpp"

#include <benchmark/benchmark.h>

using namespace ainf;

static void BM_EnumerateTrees(benchmark::State& st)
{
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_trees(n));
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(3, 8);

static void BM_FreeStasheff(benchmark::State& st)
{
    Ring r = Ring::prime_field(7);
    std::mt19937_64 rng(7);
    auto c = free_category(random_dg_quiver(r, rng));
    Bounds b;
    b.max_weight = static_cast<int>(st.range(0));
    b.max_total_weight = b.max_weight;
    b.lo = -1000;
    b.hi = 1000;
    for (auto _ : st)
        benchmark::DoNotOptimize(check_stasheff(*c, 4, b).ok);
}
BENCHMARK(BM_FreeStasheff)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Resolve(benchmark::State& st)
{
    auto b = std::make_shared<PresentedCategory>(builtin("interval-I", Ring::prime_field(7)));
    ResolutionOptions o;
    o.max_weight = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(resolve(b, o).verdict.ok());
}
BENCHMARK(BM_Resolve)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
