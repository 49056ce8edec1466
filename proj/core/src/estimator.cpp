#include "bwk/estimator.hpp"

#include <cmath>

namespace bwk {

EstimatorState::EstimatorState(int num_arms, int num_resources)
    : arms_(num_arms), num_resources_(num_resources) {
    for (auto& a : arms_) a.mean_costs.assign(num_resources, 0.0);
}

void EstimatorState::update_arm(int arm, const Observation& obs) {
    ArmStats& s = arms_.at(arm);
    s.pulls += 1;
    const double inv = 1.0 / static_cast<double>(s.pulls);
    s.mean_reward += (obs.reward - s.mean_reward) * inv;
    for (int i = 0; i < num_resources_; ++i) {
        s.mean_costs[i] += (obs.costs[i] - s.mean_costs[i]) * inv;
    }
}

void EstimatorState::record_init(int arm, const Observation& obs) {
    update_arm(arm, obs);
    init_pulls_ += 1;
    rounds_ += 1;
}

void EstimatorState::record(const PseudoBasis& basis, int extended_arm, int payoff_arm,
                            const Observation& obs) {
    if (payoff_arm >= 0) update_arm(payoff_arm, obs);
    BasisCounters& c = basis_mutable(basis);
    c.selections += 1;
    c.arm_pulls[extended_arm] += 1;
    for (int i = 0; i < num_resources_; ++i) c.consumed[i] += obs.costs[i];
    rounds_ += 1;
}

void EstimatorState::record_unattributed(int payoff_arm, const Observation& obs) {
    if (payoff_arm >= 0) update_arm(payoff_arm, obs);
    rounds_ += 1;
}

double EstimatorState::radius(int arm, double t) const {
    const ArmStats& s = arms_.at(arm);
    if (s.pulls < 1) {
        throw UnpulledArmError("confidence radius of unpulled arm " + std::to_string(arm));
    }
    return std::sqrt(2.0 * std::log(t) / static_cast<double>(s.pulls));
}

const BasisCounters* EstimatorState::basis(const PseudoBasis& b) const {
    auto it = bases_.find(b);
    return it == bases_.end() ? nullptr : &it->second;
}

BasisCounters& EstimatorState::basis_mutable(const PseudoBasis& b) {
    auto [it, inserted] = bases_.try_emplace(b);
    if (inserted) it->second.consumed.assign(num_resources_, 0.0);
    return it->second;
}

} // namespace bwk
