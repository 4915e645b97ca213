#pragma once

#include <cstdint>
#include <cmath>

namespace horocost {

// Counter-based generator: every variate is a pure function of
// (seed, stream, counter), so draws are reproducible regardless of
// thread count or evaluation order.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(mix(mix(seed) ^ mix(stream ^ 0x9e3779b97f4a7c15ull))), counter_(0) {}

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(state_ ^ counter_++); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // rejection to kill modulo bias
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Poisson variate. Inversion for small means; larger means split in
    // half recursively (a Poisson sum), keeping every draw counter-keyed.
    std::uint64_t next_poisson(double mean) {
        if (mean <= 0.0) return 0;
        if (mean < 30.0) {
            double l = std::exp(-mean);
            double p = 1.0;
            std::uint64_t k = 0;
            do {
                ++k;
                p *= next_double();
            } while (p > l);
            return k - 1;
        }
        return next_poisson(mean / 2) + next_poisson(mean / 2);
    }

    CounterRng split(std::uint64_t stream) const {
        return CounterRng(state_, stream ^ 0xd1b54a32d192ed03ull);
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_;
};

}  // namespace horocost
