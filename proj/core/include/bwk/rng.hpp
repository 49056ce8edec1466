#pragma once

#include <cstdint>

// Counter-based random streams. Every draw is a pure function of
// (episode key, domain, round, channel, index), so the order in which a
// simulation consumes draws cannot perturb any other draw. In particular,
// policy decisions cannot shift the environment draws of other arms, which
// keeps common-random-number comparisons between policies valid.

namespace bwk {

// splitmix64 finalizer; bijective with full avalanche.
constexpr uint64_t mix_bits(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t hash_combine(uint64_t seed, uint64_t v) {
    return mix_bits(seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

// Cell seed used by the sweep runner: hash64(master, policy index, B index,
// replication index). Documented so external tools can replay any cell.
constexpr uint64_t derive_seed(uint64_t master, uint64_t policy_index, uint64_t b_index,
                               uint64_t replication) {
    uint64_t h = mix_bits(master ^ 0x42574b5345454453ULL);
    h = hash_combine(h, policy_index);
    h = hash_combine(h, b_index);
    h = hash_combine(h, replication);
    return h;
}

inline constexpr uint64_t kDomainEnv = 1;
inline constexpr uint64_t kDomainPolicy = 2;

class SubstreamRng {
public:
    SubstreamRng() = default;
    explicit SubstreamRng(uint64_t episode_key) : key_(episode_key) {}

    uint64_t key() const { return key_; }

    uint64_t bits(uint64_t domain, uint64_t round, uint64_t channel, uint64_t index) const {
        uint64_t h = hash_combine(key_, domain);
        h = hash_combine(h, round);
        h = hash_combine(h, channel);
        h = hash_combine(h, index);
        return mix_bits(h);
    }

    // Uniform on [0, 1).
    double uniform(uint64_t domain, uint64_t round, uint64_t channel, uint64_t index) const {
        return static_cast<double>(bits(domain, round, channel, index) >> 11) * 0x1.0p-53;
    }

private:
    uint64_t key_ = 0;
};

} // namespace bwk
