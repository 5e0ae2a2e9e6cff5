#include "dmca/dmd.hpp"
#include "dmca/harvest.hpp"
#include "dmca/lasso.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace dmca;

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n;
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = {n(gen), n(gen)};
    }
    return m;
}

void BM_ExactDmd(benchmark::State& state) {
    const Index m = state.range(0);
    const Index n = state.range(1);
    const Matrix x = random_matrix(m, n, 1);
    for (auto _ : state) benchmark::DoNotOptimize(exact_dmd(x));
}
BENCHMARK(BM_ExactDmd)->Args({500, 12})->Args({4096, 12})->Args({65536, 12})->Unit(benchmark::kMillisecond);

void BM_Harvest(benchmark::State& state) {
    const Index pixels = state.range(0);
    const Index threads = state.range(1);
    const DataMatrix x(random_matrix(pixels, 40, 2), std::nullopt, false);
    for (auto _ : state) benchmark::DoNotOptimize(harvest(x, 12, {1, static_cast<unsigned>(threads)}));
}
BENCHMARK(BM_Harvest)->Args({4096, 1})->Args({4096, 4})->Unit(benchmark::kMillisecond);

void BM_Lasso(benchmark::State& state) {
    const Index m = state.range(0);
    const Index atoms = state.range(1);
    Matrix d = random_matrix(m, atoms, 3);
    d.colwise().normalize();
    const Vector x = random_matrix(m, 1, 4).col(0);
    const double gamma = 0.01 * gamma_max(d, x);
    for (auto _ : state) benchmark::DoNotOptimize(lasso(d, x, gamma));
}
BENCHMARK(BM_Lasso)->Args({256, 60})->Args({4096, 60})->Args({60, 256})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
