#include <benchmark/benchmark.h>

#include "bwk/harness.hpp"

namespace {

void BM_EpisodeCase2Sensors(benchmark::State& state) {
    bwk::ScenarioSpec spec;
    spec.energy_costs = {0.3, 0.45, 0.6, 0.75};
    spec.info_rates = {0.4, 0.8, 0.55, 0.7};
    spec.budget_ratios = {0.3, 0.3, 0.3, 0.3};
    spec.scale = static_cast<double>(state.range(0));
    const bwk::Instance inst = bwk::make_scenario("sensors", spec);
    const bwk::PolicyConfig cfg = bwk::default_policy(bwk::CaseTag::kCase2, inst.num_resources());
    const bwk::OracleInfo oracle = bwk::make_oracle_info(inst);

    uint64_t seed = 1;
    long rounds = 0;
    for (auto _ : state) {
        const auto ep = bwk::run_episode(inst, cfg, seed++, bwk::AssertLevel::kOff, false, &oracle);
        rounds += ep.rounds;
        benchmark::DoNotOptimize(ep.total_payoff);
    }
    state.SetItemsProcessed(rounds);
}

void BM_EpisodeCase3Pricing(benchmark::State& state) {
    bwk::ScenarioSpec spec;
    spec.prices = {0.3, 0.6, 0.8};
    spec.budget_ratios = {0.25};
    spec.scale = static_cast<double>(state.range(0));
    const bwk::Instance inst = bwk::make_scenario("pricing", spec);
    bwk::PolicyConfig cfg = bwk::default_policy(bwk::CaseTag::kCase3, 2, 2.0);
    const bwk::OracleInfo oracle = bwk::make_oracle_info(inst);

    uint64_t seed = 1;
    long rounds = 0;
    for (auto _ : state) {
        const auto ep = bwk::run_episode(inst, cfg, seed++, bwk::AssertLevel::kOff, false, &oracle);
        rounds += ep.rounds;
        benchmark::DoNotOptimize(ep.total_payoff);
    }
    state.SetItemsProcessed(rounds);
}

} // namespace

BENCHMARK(BM_EpisodeCase2Sensors)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EpisodeCase3Pricing)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
