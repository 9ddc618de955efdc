#pragma once

#include <cstdint>

namespace lram {

/// Splittable 64-bit PRNG (splitmix64 core). Deterministic across
/// platforms; sub-streams are derived by hashing so adding consumers
/// never perturbs existing streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal();

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    /// Independent child stream tagged by up to three labels.
    Rng split(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

private:
    std::uint64_t state_;
};

}  // namespace lram
