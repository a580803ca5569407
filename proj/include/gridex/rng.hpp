#ifndef GRIDEX_RNG_HPP
#define GRIDEX_RNG_HPP

#include <cstdint>
#include <random>

namespace gridex {

// Thin wrapper around mt19937_64 with explicit value derivation.
// std::uniform_*_distribution output is implementation-defined, so all
// draws go through these helpers to keep generated fixtures stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace gridex

#endif
