#include <benchmark/benchmark.h>

#include <random>

#include "sseq/couple.hpp"
#include "sseq/fixtures.hpp"
#include "sseq/instances.hpp"

using namespace sseq;

namespace {

IntMat random_matrix(int n, int seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> d(-20, 20);
    IntMat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.at(r, c) = d(rng);
    return m;
}

void BM_Smith(benchmark::State& state)
{
    IntMat a = random_matrix(int(state.range(0)), 7);
    for (auto _ : state) {
        auto f = smith(a);
        benchmark::DoNotOptimize(f.rank);
    }
}
BENCHMARK(BM_Smith)->Arg(8)->Arg(16)->Arg(32);

void BM_Subquotient(benchmark::State& state)
{
    int n = int(state.range(0));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-6, 6), k(2, 6);
    IntMat s(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            s.at(r, c) = d(rng);
    IntMat t(n, n / 2);
    for (int c = 0; c < n / 2; ++c) {
        int mult = k(rng);
        for (int r = 0; r < n; ++r)
            t.at(r, c) = mult * s.at(r, c);
    }
    for (auto _ : state) {
        Subquotient q(n, s, t);
        benchmark::DoNotOptimize(q.group().rank);
    }
}
BENCHMARK(BM_Subquotient)->Arg(12)->Arg(20);

void BM_TorusPage2(benchmark::State& state)
{
    auto tower = build_ahss(fixtures::torus(), GradedRing::integers());
    for (auto _ : state) {
        Page pg = page(tower.complex, 2);
        benchmark::DoNotOptimize(pg.entries.size());
    }
}
BENCHMARK(BM_TorusPage2);

void BM_TorusPairing(benchmark::State& state)
{
    auto tower = build_ahss(fixtures::torus(), GradedRing::integers());
    for (auto _ : state) {
        PagePairing pp = page_pairing(tower.complex, 2);
        benchmark::DoNotOptimize(pp.tables.size());
    }
}
BENCHMARK(BM_TorusPairing);

void BM_BocksteinRp2(benchmark::State& state)
{
    auto k = fixtures::rp2();
    for (auto _ : state) {
        auto pages = bockstein_pages(bockstein_couple(k, 2), 4);
        benchmark::DoNotOptimize(pages.tables.size());
    }
}
BENCHMARK(BM_BocksteinRp2);

void BM_Rp3Cohomology(benchmark::State& state)
{
    auto k = fixtures::rp3();
    auto c = chain_complex(k);
    for (auto _ : state) {
        auto h2 = c.cohomology(2, 0);
        benchmark::DoNotOptimize(h2.group().rank);
    }
}
BENCHMARK(BM_Rp3Cohomology);

}  // namespace

BENCHMARK_MAIN();
