#pragma once

#include <unordered_map>
#include <vector>

#include "bwk/env.hpp"
#include "bwk/lp.hpp"

// Online sufficient statistics: per-arm empirical means and confidence radii,
// per-basis selection counters and consumption trackers.

namespace bwk {

struct UnpulledArmError : std::runtime_error {
    explicit UnpulledArmError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ArmStats {
    long pulls = 0;
    double mean_reward = 0.0;
    std::vector<double> mean_costs;
};

// Extended arm ids used by the load balancers: kSkipArm skips the round, ids
// 1..K are the real arms (shifted by one), ids K+1..2K are unit-cost shadows.
inline constexpr int kSkipArm = 0;
inline constexpr int real_to_extended(int arm) { return arm + 1; }
inline constexpr int shadow_of(int arm, int num_arms) { return num_arms + 1 + arm; }

struct BasisCounters {
    long selections = 0;                     // n_x
    std::unordered_map<int, long> arm_pulls; // n^x keyed by extended arm id
    std::vector<double> consumed;            // b_x(i), all resources
    long swaps = 0;                          // case-3 role inversions (diagnostic)
};

class EstimatorState {
public:
    EstimatorState(int num_arms, int num_resources);

    // Initialization pulls update arm statistics only.
    void record_init(int arm, const Observation& obs);

    // Main-phase round: basis x was selected and `extended_arm` was pulled
    // (kSkipArm consumes only time). payoff_arm < 0 means no real pull.
    void record(const PseudoBasis& basis, int extended_arm, int payoff_arm,
                const Observation& obs);

    // Baseline round with no basis bookkeeping.
    void record_unattributed(int payoff_arm, const Observation& obs);

    double radius(int arm, double t) const; // sqrt(2 ln t / n_{k,t})

    const ArmStats& arm(int k) const { return arms_.at(k); }
    int num_arms() const { return static_cast<int>(arms_.size()); }
    int num_resources() const { return num_resources_; }
    long init_pulls() const { return init_pulls_; }
    long rounds_recorded() const { return rounds_; }

    const BasisCounters* basis(const PseudoBasis& b) const;
    BasisCounters& basis_mutable(const PseudoBasis& b); // creates lazily
    const std::unordered_map<PseudoBasis, BasisCounters, PseudoBasisHash>& bases() const {
        return bases_;
    }

private:
    void update_arm(int arm, const Observation& obs);

    std::vector<ArmStats> arms_;
    std::unordered_map<PseudoBasis, BasisCounters, PseudoBasisHash> bases_;
    int num_resources_ = 0;
    long init_pulls_ = 0;
    long rounds_ = 0; // init + main-phase rounds recorded
};

} // namespace bwk
