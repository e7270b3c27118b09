#pragma once

#include <cstdint>

namespace lpsect {

// Stateless counter-based generator: every draw is a hash of
// (seed, item, draw).  Results are independent of evaluation order and
// thread count, which keeps Monte Carlo runs bitwise reproducible.
struct CounterRng {
    uint64_t seed;

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t raw(uint64_t item, uint64_t draw) const {
        return mix(seed ^ mix(item ^ mix(draw + 0x632be59bd9b4e019ull)));
    }

    // uniform in (0, 1)
    double uniform(uint64_t item, uint64_t draw) const {
        return ((raw(item, draw) >> 11) + 0.5) * 0x1.0p-53;
    }
};

// Standard normal pair by Box-Muller from two counter draws.
struct NormalPair {
    double a, b;
};

NormalPair normal_pair(const CounterRng& rng, uint64_t item, uint64_t draw);

// Gamma(shape, 1) variate for shape >= 1 by the Marsaglia-Tsang squeeze;
// consumes a variable number of draws starting at *draw (advanced).
double gamma_variate(const CounterRng& rng, uint64_t item, uint64_t* draw, double shape);

} // namespace lpsect
