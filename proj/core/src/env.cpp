#include "bwk/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bwk {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

DiscreteDist bernoulli(double p) {
    return DiscreteDist{{0.0, 1.0}, {1.0 - p, p}};
}

} // namespace

const char* to_string(ArmKind kind) {
    switch (kind) {
        case ArmKind::kBernoulliJoint: return "bernoulli-joint";
        case ArmKind::kDeterministicCost: return "deterministic-cost";
        case ArmKind::kPricing: return "pricing";
        case ArmKind::kAuction: return "auction";
        case ArmKind::kProcurement: return "procurement";
        case ArmKind::kTabular: return "tabular";
    }
    return "?";
}

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::kCase1: return "case1";
        case CaseTag::kCase2: return "case2";
        case CaseTag::kCase3: return "case3";
        case CaseTag::kCase4: return "case4";
    }
    return "?";
}

double DiscreteDist::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m += values[i] * probs[i];
    return m;
}

double DiscreteDist::sample(double u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += probs[i];
        if (u < acc) return values[i];
    }
    return values.back();
}

double LatentDist::sample(double u) const {
    if (kind == Kind::kUniform) return lo + u * (hi - lo);
    return discrete.sample(u);
}

double LatentDist::prob_geq(double x) const {
    if (kind == Kind::kUniform) {
        if (x <= lo) return 1.0;
        if (x >= hi) return 0.0;
        return (hi - x) / (hi - lo);
    }
    double p = 0.0;
    for (std::size_t i = 0; i < discrete.values.size(); ++i) {
        if (discrete.values[i] >= x) p += discrete.probs[i];
    }
    return p;
}

double LatentDist::partial_mean_leq(double x) const {
    if (kind == Kind::kUniform) {
        if (x <= lo) return 0.0;
        double t = std::min(x, hi);
        return (t * t - lo * lo) / (2.0 * (hi - lo));
    }
    double m = 0.0;
    for (std::size_t i = 0; i < discrete.values.size(); ++i) {
        if (discrete.values[i] <= x) m += discrete.values[i] * discrete.probs[i];
    }
    return m;
}

double Instance::min_positive_mean_cost() const {
    double m = 1.0;
    bool any = false;
    for (const auto& arm : arms) {
        for (double c : arm.mean_costs) {
            if (c > 0.0) {
                m = std::min(m, c);
                any = true;
            }
        }
    }
    return any ? m : 0.0;
}

Instance Instance::with_scale(double b) const {
    Instance copy = *this;
    copy.scale = b;
    return copy;
}

void Instance::validate() const {
    require(!arms.empty(), "instance: no arms");
    const int C = num_resources();
    require(C >= 1, "instance: no resources");
    for (double b : budget_ratios) require(b > 0.0 && b <= 1.0, "instance: budget ratios must lie in (0,1]");
    if (time_is_resource) {
        require(budget_ratios.back() == 1.0, "instance: time budget ratio must be 1");
    }
    for (std::size_t k = 0; k < arms.size(); ++k) {
        const ArmModel& a = arms[k];
        const std::string tag = "arm " + std::to_string(k);
        require(static_cast<int>(a.mean_costs.size()) == C, tag + ": mean_costs length != C");
        require(a.mean_reward >= 0.0 && a.mean_reward <= 1.0, tag + ": mean reward outside [0,1]");
        double max_cost = 0.0;
        for (double c : a.mean_costs) {
            require(c >= 0.0 && c <= 1.0, tag + ": mean cost outside [0,1]");
            max_cost = std::max(max_cost, c);
        }
        require(max_cost > 0.0, tag + ": every arm needs some strictly positive mean cost");
        if (time_is_resource) require(a.mean_costs.back() == 1.0, tag + ": time cost must be 1");
        switch (a.kind) {
            case ArmKind::kBernoulliJoint:
                require(a.event_rate >= 0.0 && a.event_rate <= 1.0, tag + ": event rate outside [0,1]");
                require(a.reward_value >= 0.0 && a.reward_value <= 1.0, tag + ": reward value outside [0,1]");
                require(a.cost_values.size() == a.mean_costs.size(), tag + ": cost_values length != C");
                for (double c : a.cost_values) require(c >= 0.0 && c <= 1.0, tag + ": cost value outside [0,1]");
                break;
            case ArmKind::kDeterministicCost: {
                if (a.shelf.empty()) {
                    require(!a.reward_dist.values.empty(), tag + ": missing reward distribution");
                    double acc = 0.0;
                    for (double p : a.reward_dist.probs) acc += p;
                    require(std::abs(acc - 1.0) < 1e-9, tag + ": reward probabilities must sum to 1");
                    for (double v : a.reward_dist.values) require(v >= 0.0 && v <= 1.0, tag + ": reward value outside [0,1]");
                } else {
                    double max_reward = 0.0;
                    for (const auto& prod : a.shelf) {
                        max_reward += prod.price * std::min(prod.max_demand, prod.units);
                    }
                    require(a.reward_scale * max_reward <= 1.0 + 1e-12,
                            tag + ": shelf rewards exceed 1 after scaling; lower reward_scale");
                    require(latents.size() >= a.shelf.size(), tag + ": shelf needs one latent per product");
                }
                break;
            }
            case ArmKind::kPricing:
            case ArmKind::kProcurement:
                require(!latents.empty(), tag + ": needs a shared valuation latent");
                require(a.price > 0.0 && a.price <= 1.0, tag + ": price outside (0,1]");
                break;
            case ArmKind::kAuction:
                require(latents.size() >= 2, tag + ": needs competing-bid and utility latents");
                require(a.price > 0.0 && a.price <= 1.0, tag + ": bid outside (0,1]");
                break;
            case ArmKind::kTabular:
                break;
        }
    }
    if (case_tag == CaseTag::kCase2) {
        for (const auto& a : arms) {
            require(a.kind == ArmKind::kDeterministicCost, "case2 requires deterministic-cost arms");
        }
    }
    if (case_tag == CaseTag::kCase3) {
        require(C == 2 && time_is_resource, "case3 requires C=2 with time as resource 2");
    }
    if (case_tag == CaseTag::kCase4) {
        require(time_is_resource, "case4 requires time as the last resource");
    }
}

Observation sample_observation(const Instance& instance, int arm, long round,
                               const SubstreamRng& rng) {
    if (arm < 0 || arm >= instance.num_arms()) {
        throw std::out_of_range("sample_observation: arm index " + std::to_string(arm));
    }
    const ArmModel& model = instance.arms[arm];
    const int C = instance.num_resources();
    const uint64_t t = static_cast<uint64_t>(round);
    const uint64_t arm_channel = static_cast<uint64_t>(arm) + 1;

    Observation obs;
    obs.round = round;
    obs.costs.assign(C, 0.0);

    auto latent = [&](std::size_t j) {
        return instance.latents[j].sample(rng.uniform(kDomainEnv, t, 0, j));
    };
    auto arm_draw = [&](uint64_t idx) { return rng.uniform(kDomainEnv, t, arm_channel, idx); };

    switch (model.kind) {
        case ArmKind::kPricing: {
            const double v = latent(0);
            const bool sale = model.price <= v;
            obs.reward = sale ? model.price : 0.0;
            obs.costs[0] = sale ? 1.0 : 0.0;
            break;
        }
        case ArmKind::kAuction: {
            const double m = latent(0);
            const double v = latent(1);
            const bool win = model.price >= m;
            obs.reward = win ? v : 0.0;
            obs.costs[0] = win ? m : 0.0;
            break;
        }
        case ArmKind::kProcurement: {
            const double v = latent(0);
            const bool sell = model.price >= v;
            obs.reward = sell ? 1.0 : 0.0;
            obs.costs[0] = sell ? model.price : 0.0;
            break;
        }
        case ArmKind::kBernoulliJoint: {
            const bool event = arm_draw(0) < model.event_rate;
            obs.reward = event ? model.reward_value : 0.0;
            if (event) {
                for (int i = 0; i < C; ++i) obs.costs[i] = model.cost_values[i];
            }
            break;
        }
        case ArmKind::kDeterministicCost: {
            obs.costs = model.mean_costs;
            if (model.shelf.empty()) {
                obs.reward = model.reward_dist.sample(arm_draw(0));
            } else {
                double r = 0.0;
                for (std::size_t m = 0; m < model.shelf.size(); ++m) {
                    const ShelfProduct& prod = model.shelf[m];
                    const double u = rng.uniform(kDomainEnv, t, 0, m);
                    const int demand = u < prod.sale_prob ? prod.max_demand : 0;
                    r += prod.price * std::min(demand, prod.units);
                }
                obs.reward = model.reward_scale * r;
            }
            break;
        }
        case ArmKind::kTabular: {
            obs.reward = arm_draw(0) < model.mean_reward ? 1.0 : 0.0;
            for (int i = 0; i < C; ++i) {
                obs.costs[i] = arm_draw(1 + static_cast<uint64_t>(i)) < model.mean_costs[i] ? 1.0 : 0.0;
            }
            break;
        }
    }
    if (instance.time_is_resource) obs.costs[C - 1] = 1.0;
    return obs;
}

namespace {

void account(EnvState& state, const Instance& instance, const Observation& obs) {
    state.round += 1;
    bool exceeded = false;
    for (int i = 0; i < instance.num_resources(); ++i) {
        state.consumed[i] += obs.costs[i];
        if (state.consumed[i] > instance.budget(i)) exceeded = true;
    }
    if (exceeded && !state.terminated) {
        state.terminated = true;
        state.stop_time = state.round;
    }
}

} // namespace

Observation step(EnvState& state, const Instance& instance, int arm, const SubstreamRng& rng) {
    Observation obs = sample_observation(instance, arm, state.round + 1, rng);
    account(state, instance, obs);
    return obs;
}

Observation step_skip(EnvState& state, const Instance& instance) {
    Observation obs;
    obs.round = state.round + 1;
    obs.costs.assign(instance.num_resources(), 0.0);
    if (instance.time_is_resource) obs.costs.back() = 1.0;
    account(state, instance, obs);
    return obs;
}

std::vector<std::string> scenario_names() {
    return {"pricing", "auction", "procurement", "ad-alloc", "sensors", "shelf"};
}

Instance make_scenario(const std::string& name, const ScenarioSpec& spec) {
    Instance inst;
    inst.scale = spec.scale;

    auto ratios_with_time = [&](std::size_t non_time) {
        require(spec.budget_ratios.size() == non_time,
                name + ": expected " + std::to_string(non_time) + " budget ratios (time appended automatically)");
        std::vector<double> r = spec.budget_ratios;
        r.push_back(1.0);
        return r;
    };

    if (name == "pricing" || name == "procurement") {
        require(!spec.prices.empty(), name + ": needs a price grid");
        inst.time_is_resource = true;
        inst.case_tag = CaseTag::kCase3;
        inst.budget_ratios = ratios_with_time(1);
        inst.latents = {spec.valuation};
        for (double p : spec.prices) {
            ArmModel arm;
            arm.price = p;
            if (name == "pricing") {
                arm.kind = ArmKind::kPricing;
                const double sale = spec.valuation.prob_geq(p);
                arm.mean_reward = p * sale;
                arm.mean_costs = {sale, 1.0};
            } else {
                arm.kind = ArmKind::kProcurement;
                // P[v <= p]; the boundary atom matters only for discrete latents
                const double p_leq = 1.0 - spec.valuation.prob_geq(std::nextafter(p, 2.0));
                arm.mean_reward = p_leq;
                arm.mean_costs = {p * p_leq, 1.0};
            }
            inst.arms.push_back(std::move(arm));
        }
    } else if (name == "auction") {
        require(!spec.prices.empty(), "auction: needs a bid grid");
        inst.time_is_resource = spec.include_time;
        inst.case_tag = spec.include_time ? CaseTag::kCase3 : CaseTag::kCase1;
        if (spec.include_time) {
            inst.budget_ratios = ratios_with_time(1);
        } else {
            require(spec.budget_ratios.size() == 1, "auction: expected one budget ratio");
            inst.budget_ratios = spec.budget_ratios;
        }
        LatentDist bids; // competing bid m_t
        bids.kind = LatentDist::Kind::kUniform;
        bids.lo = spec.reserve;
        bids.hi = 1.0;
        LatentDist util = spec.valuation;
        inst.latents = {bids, util};
        const double mean_util = util.kind == LatentDist::Kind::kUniform
                                     ? 0.5 * (util.lo + util.hi)
                                     : util.discrete.mean();
        for (double b : spec.prices) {
            ArmModel arm;
            arm.kind = ArmKind::kAuction;
            arm.price = b;
            const double win = 1.0 - bids.prob_geq(std::nextafter(b, 2.0)); // P[m <= b]
            arm.mean_reward = mean_util * win;
            arm.mean_costs = {bids.partial_mean_leq(b)};
            if (spec.include_time) arm.mean_costs.push_back(1.0);
            inst.arms.push_back(std::move(arm));
        }
    } else if (name == "ad-alloc") {
        const std::size_t K = spec.click_rates.size();
        require(K > 0 && spec.cpc.size() == K, "ad-alloc: click_rates and cpc must match");
        inst.time_is_resource = true;
        inst.case_tag = CaseTag::kCase4;
        inst.budget_ratios = ratios_with_time(K);
        for (std::size_t k = 0; k < K; ++k) {
            ArmModel arm;
            arm.kind = ArmKind::kBernoulliJoint;
            arm.event_rate = spec.click_rates[k];
            arm.reward_value = spec.cpc[k];
            arm.cost_values.assign(K + 1, 0.0);
            arm.cost_values[k] = spec.cpc[k];
            arm.mean_reward = spec.click_rates[k] * spec.cpc[k];
            arm.mean_costs.assign(K + 1, 0.0);
            arm.mean_costs[k] = spec.click_rates[k] * spec.cpc[k];
            arm.mean_costs[K] = 1.0;
            inst.arms.push_back(std::move(arm));
        }
    } else if (name == "sensors") {
        const std::size_t K = spec.energy_costs.size();
        require(K > 0 && spec.info_rates.size() == K, "sensors: energy_costs and info_rates must match");
        inst.time_is_resource = true;
        inst.case_tag = CaseTag::kCase2;
        inst.budget_ratios = ratios_with_time(K);
        for (std::size_t k = 0; k < K; ++k) {
            ArmModel arm;
            arm.kind = ArmKind::kDeterministicCost;
            arm.mean_costs.assign(K + 1, 0.0);
            arm.mean_costs[k] = spec.energy_costs[k];
            arm.mean_costs[K] = 1.0;
            arm.reward_dist = bernoulli(spec.info_rates[k]);
            arm.mean_reward = spec.info_rates[k];
            inst.arms.push_back(std::move(arm));
        }
    } else if (name == "shelf") {
        require(!spec.shelf_arms.empty(), "shelf: needs arm definitions");
        const std::size_t M = spec.shelf_arms.front().size();
        require(M > 0, "shelf: needs at least one product");
        inst.time_is_resource = true;
        inst.case_tag = CaseTag::kCase2;
        inst.budget_ratios = ratios_with_time(M);
        LatentDist u01;
        inst.latents.assign(M, u01); // one demand draw per product per round
        for (const auto& products : spec.shelf_arms) {
            require(products.size() == M, "shelf: all arms must cover every product");
            ArmModel arm;
            arm.kind = ArmKind::kDeterministicCost;
            arm.shelf = products;
            arm.reward_scale = spec.shelf_scale;
            arm.mean_costs.assign(M + 1, 1.0); // every clock ticks each round
            double mean = 0.0;
            for (const auto& prod : products) {
                mean += prod.price * prod.sale_prob * std::min(prod.max_demand, prod.units);
            }
            arm.mean_reward = spec.shelf_scale * mean;
            inst.arms.push_back(std::move(arm));
        }
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }

    inst.validate();
    return inst;
}

Instance make_tabular_instance(const std::vector<double>& mean_rewards, const Mat& mean_costs,
                               const std::vector<double>& budget_ratios, bool time_is_resource,
                               CaseTag tag, ArmKind kind) {
    const std::size_t K = mean_rewards.size();
    const std::size_t C = budget_ratios.size();
    require(mean_costs.rows() == C && mean_costs.cols() == K, "tabular: mean cost matrix must be C x K");

    Instance inst;
    inst.budget_ratios = budget_ratios;
    inst.time_is_resource = time_is_resource;
    inst.case_tag = tag;
    for (std::size_t k = 0; k < K; ++k) {
        ArmModel arm;
        arm.kind = kind;
        arm.mean_reward = mean_rewards[k];
        arm.mean_costs.resize(C);
        for (std::size_t i = 0; i < C; ++i) arm.mean_costs[i] = mean_costs(i, k);
        if (kind == ArmKind::kDeterministicCost) {
            arm.reward_dist = bernoulli(mean_rewards[k]);
        } else if (kind == ArmKind::kBernoulliJoint) {
            // One event drives everything; scale values so means come out
            // right. The time column stays deterministic and is excluded.
            const std::size_t stochastic = time_is_resource ? C - 1 : C;
            double rate = arm.mean_reward;
            for (std::size_t i = 0; i < stochastic; ++i) rate = std::max(rate, arm.mean_costs[i]);
            arm.event_rate = rate;
            arm.reward_value = rate > 0.0 ? arm.mean_reward / rate : 0.0;
            arm.cost_values.assign(C, 1.0);
            for (std::size_t i = 0; i < stochastic; ++i) {
                arm.cost_values[i] = rate > 0.0 ? arm.mean_costs[i] / rate : 0.0;
            }
        }
        inst.arms.push_back(std::move(arm));
    }
    inst.validate();
    return inst;
}

LpProblem true_mean_lp(const Instance& instance) {
    const int K = instance.num_arms();
    const int C = instance.num_resources();
    LpProblem lp;
    lp.objective.resize(K);
    lp.costs = Mat(C, K);
    lp.rhs = instance.budget_ratios;
    for (int k = 0; k < K; ++k) {
        lp.objective[k] = instance.arms[k].mean_reward;
        for (int i = 0; i < C; ++i) lp.costs(i, k) = instance.arms[k].mean_costs[i];
    }
    return lp;
}

} // namespace bwk
