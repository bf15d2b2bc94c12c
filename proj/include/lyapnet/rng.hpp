#pragma once

#include <cstdint>
#include <random>

#include "lyapnet/common.hpp"

namespace lyapnet {

// splitmix64 finalizer; used to derive independent stream seeds from
// (seed, index) pairs so parallel work is reproducible regardless of
// scheduling.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 1));
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return sub_seed(sub_seed(seed, a), b);
}

// Deterministic RNG with explicit sampling routines. std::mt19937_64 is
// pinned by the standard; the distributions below are written out so the
// stream does not depend on libstdc++ internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    void seed(std::uint64_t s) { engine_.seed(s); }

    // uniform in [0, 1)
    double uniform01() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // inclusive integer range
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Box-Muller; one value per call, no cached spare (keeps replay simple).
    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    Vec uniform_vec(const Vec& lo, const Vec& hi) {
        Vec v(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) v[i] = uniform(lo[i], hi[i]);
        return v;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace lyapnet
