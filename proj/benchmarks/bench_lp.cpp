#include <benchmark/benchmark.h>

#include <random>

#include "bwk/lp.hpp"

namespace {

bwk::LpProblem random_problem(int num_arms, int num_resources, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    bwk::LpProblem lp;
    lp.objective.resize(num_arms);
    lp.costs = bwk::Mat(num_resources, num_arms);
    lp.rhs.resize(num_resources);
    for (int k = 0; k < num_arms; ++k) lp.objective[k] = unit(gen);
    for (int i = 0; i < num_resources; ++i) lp.rhs[i] = 0.2 + 0.8 * unit(gen);
    for (int i = 0; i < num_resources; ++i) {
        for (int k = 0; k < num_arms; ++k) lp.costs(i, k) = unit(gen);
    }
    return lp;
}

void BM_OptimalBasisFullSweep(benchmark::State& state) {
    const auto lp = random_problem(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bwk::optimal_basis(lp));
    }
}

// the per-round hot path used by Step-Simplex
void BM_BestFeasibleBasis(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const int C = static_cast<int>(state.range(1));
    auto lp = random_problem(K, C, 42);
    const auto bases = bwk::enumerate_pseudo_bases(K, C);
    for (auto _ : state) {
        lp.objective[0] += 1e-12; // defeat value caching
        benchmark::DoNotOptimize(bwk::best_feasible_basis(lp, bases));
    }
}

void BM_SolveDual(benchmark::State& state) {
    const auto lp = random_problem(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bwk::solve_dual(lp));
    }
}

} // namespace

BENCHMARK(BM_OptimalBasisFullSweep)->Args({3, 2})->Args({6, 3})->Args({10, 4});
BENCHMARK(BM_BestFeasibleBasis)->Args({3, 2})->Args({4, 5})->Args({6, 3})->Args({10, 4});
BENCHMARK(BM_SolveDual)->Args({6, 3});
