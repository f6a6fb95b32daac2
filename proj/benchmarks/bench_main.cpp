#include <benchmark/benchmark.h>

#include <random>

#include "dgcat/linalg.hpp"

namespace {

using namespace dgcat;

void BM_Rref(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> val(-3, 3);
    std::vector<QVec> rows(static_cast<std::size_t>(n), zero_vec(static_cast<std::size_t>(n)));
    for (auto& row : rows)
        for (auto& x : row)
            x = q(val(rng));
    for (auto _ : state) {
        Echelon e = rref(rows, n);
        benchmark::DoNotOptimize(e.rank());
    }
}
BENCHMARK(BM_Rref)->Arg(16)->Arg(48)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
