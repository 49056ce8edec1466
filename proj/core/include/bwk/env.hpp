#pragma once

#include <string>
#include <vector>

#include "bwk/lp.hpp"
#include "bwk/rng.hpp"

// Ground-truth environments: joint reward/cost sampling per arm, budget
// accounting, stopping-time detection, and generators for the standard
// application scenarios (pricing, auctions, procurement, ad allocation,
// sensor networks, shelf allocation).

namespace bwk {

enum class CaseTag { kCase1, kCase2, kCase3, kCase4 };

enum class ArmKind {
    kBernoulliJoint,    // one Bernoulli event scales reward and costs jointly
    kDeterministicCost, // exact costs, random reward
    kPricing,           // sale when offer price <= shared valuation draw
    kAuction,           // win when bid >= shared competing-bid draw
    kProcurement,       // sell when offer price >= shared seller-value draw
    kTabular,           // independent Bernoulli reward and costs
};

const char* to_string(ArmKind kind);
const char* to_string(CaseTag tag);

struct DiscreteDist {
    std::vector<double> values;
    std::vector<double> probs; // same length, sums to 1
    double mean() const;
    double sample(double u) const; // inverse CDF
};

struct LatentDist {
    enum class Kind { kUniform, kDiscrete };
    Kind kind = Kind::kUniform;
    double lo = 0.0;
    double hi = 1.0;
    DiscreteDist discrete;

    double sample(double u) const;
    // P[X >= x] and E[X * 1{X <= x}], used for closed-form scenario means.
    double prob_geq(double x) const;
    double partial_mean_leq(double x) const;
};

struct ShelfProduct {
    double price = 0.0;
    int units = 0;      // units allocated by this arm
    int max_demand = 1; // demand is max_demand with prob sale_prob, else 0
    double sale_prob = 0.0;
};

struct ArmModel {
    ArmKind kind = ArmKind::kTabular;
    double mean_reward = 0.0;
    std::vector<double> mean_costs; // length C; last entry 1 when time is a resource

    // sampler parameters, meaning depends on kind
    double price = 0.0;                    // pricing/procurement offer, auction bid
    double event_rate = 0.0;               // bernoulli-joint event probability
    double reward_value = 0.0;             // bernoulli-joint reward on the event
    std::vector<double> cost_values;       // bernoulli-joint costs on the event
    DiscreteDist reward_dist;              // deterministic-cost reward law
    std::vector<ShelfProduct> shelf;       // deterministic-cost shelf payload
    double reward_scale = 1.0;             // shelf scaling into [0,1]
};

struct Instance {
    std::vector<ArmModel> arms;
    std::vector<double> budget_ratios; // b(i) in (0,1]; b(C)=1 when time is a resource
    double scale = 0.0;                // B; budgets are b(i)*B
    bool time_is_resource = false;     // the last resource is time, unit deterministic cost
    CaseTag case_tag = CaseTag::kCase1;
    std::vector<LatentDist> latents;   // shared per-round draws coupling arms

    int num_arms() const { return static_cast<int>(arms.size()); }
    int num_resources() const { return static_cast<int>(budget_ratios.size()); }
    int time_resource() const { return time_is_resource ? num_resources() - 1 : -1; }
    double budget(int i) const { return budget_ratios[i] * scale; }
    double min_positive_mean_cost() const;
    Instance with_scale(double b) const;
    void validate() const; // throws std::invalid_argument
};

struct Observation {
    double reward = 0.0;
    std::vector<double> costs;
    long round = 0;
};

struct EnvState {
    std::vector<double> consumed;
    long round = 0;        // rounds completed so far
    bool terminated = false;
    long stop_time = 0;    // tau*: first round whose cumulative consumption exceeds a budget

    explicit EnvState(int num_resources) : consumed(num_resources, 0.0) {}
};

// Draws the joint (reward, costs) observation of `arm` at `round` without any
// state bookkeeping. Exposed for mean-fidelity tests.
Observation sample_observation(const Instance& instance, int arm, long round,
                               const SubstreamRng& rng);

// One environment transition. Callers may keep stepping after termination for
// diagnostics; stop_time stays at the first crossing.
Observation step(EnvState& state, const Instance& instance, int arm, const SubstreamRng& rng);

// Skip the round: zero reward, zero cost everywhere except time.
Observation step_skip(EnvState& state, const Instance& instance);

struct ScenarioSpec {
    std::vector<double> budget_ratios; // excluding trailing time entry where implied
    double scale = 0.0;

    std::vector<double> prices;      // pricing / procurement offers, auction bids
    LatentDist valuation;            // shared valuation draw (defaults U[0,1])
    double reserve = 0.0;            // auction: competing bids live on [reserve, 1]
    bool include_time = true;        // auction only: with time => case 3, without => case 1

    std::vector<double> click_rates; // ad-alloc event rates
    std::vector<double> cpc;         // ad-alloc cost-per-click

    std::vector<double> energy_costs; // sensors deterministic per-pull cost
    std::vector<double> info_rates;   // sensors Bernoulli reward rates

    std::vector<std::vector<ShelfProduct>> shelf_arms; // per arm, per product
    double shelf_scale = 1.0;
};

// Built-in scenario ids: pricing, auction, procurement, ad-alloc, sensors, shelf.
Instance make_scenario(const std::string& name, const ScenarioSpec& spec);
std::vector<std::string> scenario_names();

// Tabular ground truth given directly as mean matrices.
Instance make_tabular_instance(const std::vector<double>& mean_rewards, const Mat& mean_costs,
                               const std::vector<double>& budget_ratios, bool time_is_resource,
                               CaseTag tag, ArmKind kind = ArmKind::kTabular);

// Oracle LP assembled from ground-truth means; consumed by the oracle module
// only, never by policies.
LpProblem true_mean_lp(const Instance& instance);

} // namespace bwk
