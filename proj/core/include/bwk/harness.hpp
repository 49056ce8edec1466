#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bwk/env.hpp"
#include "bwk/estimator.hpp"
#include "bwk/oracle.hpp"
#include "bwk/policy.hpp"

// Experiment orchestration: seeded Monte-Carlo replications, sweeps over the
// budget scale and policy list, invariant assertion hooks, and result
// serialization. Sweep cells are independent work units; reruns of the same
// config produce byte-identical outputs.

namespace bwk {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class AssertLevel { kOff, kInvariants, kParanoid };
const char* to_string(AssertLevel level);

struct ExperimentConfig {
    Instance instance; // prototype; scale is overridden by the grid per cell
    std::vector<PolicyConfig> policies;
    std::vector<double> b_grid;
    int replications = 1;
    uint64_t master_seed = 1;
    AssertLevel assert_level = AssertLevel::kInvariants;
    std::string output_csv;
    std::string trace_jsonl; // empty disables per-episode traces
    int jobs = 1;
    double horizon_cap_factor = 10.0; // non-time episodes stop at factor*sum(B)/eps
    double audit_epsilon = 0.0;

    void validate() const;
};

// Config document: JSON with a top-level "spec_version": 1.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct TraceStep {
    long t = 0;
    int extended_arm = kSkipArm;
    int payoff_arm = -1;
    bool init = false;
    bool has_basis = false;
    PseudoBasis basis;
    double reward = 0.0;
    std::vector<double> costs;
};

struct EpisodeResult {
    long tau_star = 0;
    double total_payoff = 0.0; // rewards strictly before tau*
    long rounds = 0;
    long init_rounds = 0;
    std::vector<long> arm_pulls;
    std::vector<double> consumed;
    std::unordered_map<PseudoBasis, BasisCounters, PseudoBasisHash> basis_counters;
    long swaps = 0;
    double max_delta_star = 0.0;
    long pacing_rounds = 0;
    std::vector<std::string> violations;
    bool cap_hit = false;
    bool failed = false;
    std::string error;
    std::vector<TraceStep> trace;

    EpisodeStats stats() const { return {total_payoff, static_cast<double>(tau_star)}; }
};

// Clairvoyant inputs an episode may need: the static baseline's distribution,
// the case-2 initialization count, true costs for swap diagnostics.
struct OracleInfo {
    std::vector<double> xi_star;
    int rho = 0;
    std::vector<double> true_costs_resource0;
};
OracleInfo make_oracle_info(const Instance& instance);

EpisodeResult run_episode(const Instance& instance, const PolicyConfig& config, uint64_t seed,
                          AssertLevel level = AssertLevel::kOff, bool keep_trace = false,
                          const OracleInfo* oracle = nullptr);

struct SweepRow {
    std::string policy_id;
    double b = 0.0;
    long reps = 0;
    RegretEstimate estimate;
    long failures = 0;
    long cap_hits = 0;
    long violations = 0;
};

struct PolicyGrowth {
    std::string policy_id;
    GrowthDiagnostics diagnostics;
};

struct SweepResult {
    std::vector<SweepRow> rows;        // policy-major, grid order
    std::vector<PolicyGrowth> growth;  // per policy, needs >= 3 grid points
    std::string csv;                   // exact bytes written to output_csv
    std::vector<EpisodeResult> episodes; // cell order: policy-major, grid, replication
};

SweepResult run_sweep(const ExperimentConfig& config);

std::string format_csv(const std::vector<SweepRow>& rows);
std::string format_trace_jsonl(const ExperimentConfig& config, const SweepResult& result);

} // namespace bwk
