#include <hrql/enumsolver.hpp>
#include <hrql/oracle.hpp>
#include <hrql/q2solver.hpp>

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace hrql;

namespace {

// Strict instance with lower quotas in {1,2}; each resident lists `len` random hospitals.
Instance make_q2(int n, int m, int len, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    InstanceBuilder b;
    for (int r = 0; r < n; ++r)
        b.add_resident("r" + std::to_string(r + 1));
    std::vector<std::vector<int>> acc(m);
    for (int h = 0; h < m; ++h) {
        int l = 1 + static_cast<int>(rng() % 2);
        b.add_hospital("h" + std::to_string(h + 1), l, l + static_cast<int>(rng() % 7));
    }
    std::vector<int> hs(m);
    std::iota(hs.begin(), hs.end(), 0);
    for (int r = 0; r < n; ++r) {
        std::shuffle(hs.begin(), hs.end(), rng);
        std::vector<int> list(hs.begin(), hs.begin() + std::min(len, m));
        b.resident_strict(r, list);
        for (int h : list)
            acc[h].push_back(r);
    }
    for (int h = 0; h < m; ++h) {
        std::shuffle(acc[h].begin(), acc[h].end(), rng);
        b.hospital_strict(h, acc[h]);
    }
    return b.finish();
}

void BM_Q2(benchmark::State &state)
{
    auto inst = make_q2(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 50, 9);
    Q2Options o;
    o.check_invariants = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_q2(inst, o));
}
BENCHMARK(BM_Q2)->Args({500, 125})->Args({2000, 500})->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State &state)
{
    auto inst = make_q2(static_cast<int>(state.range(0)), 4, 3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(first_stable(inst));
}
BENCHMARK(BM_Oracle)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_FptSubsets(benchmark::State &state)
{
    auto inst = make_q2(12, static_cast<int>(state.range(0)), 4, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_fpt_subsets(inst));
}
BENCHMARK(BM_FptSubsets)->DenseRange(4, 10, 3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
