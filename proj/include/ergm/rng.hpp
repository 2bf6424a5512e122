#pragma once

#include <cstdint>
#include <random>

namespace ergm {

// Deterministic RNG wrapper. All variate mappings are implemented here rather
// than with std distributions, whose output is implementation-defined; seed
// reproducibility is part of the artifact's contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0,1) with 53 random bits
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n), unbiased (rejection from the top range)
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return next_unit() < p; }

private:
    std::mt19937_64 gen_;
};

// splitmix64 finalizer; the fixed per-job seed derivation rule
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for job `index` of a run keyed by `master`. Independent jobs derive
// their streams through this single rule so concurrent execution order never
// affects results.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

} // namespace ergm
