#include "lpsect/rng.hpp"

#include <cmath>

namespace lpsect {

NormalPair normal_pair(const CounterRng& rng, uint64_t item, uint64_t draw) {
    const double u1 = rng.uniform(item, draw);
    const double u2 = rng.uniform(item, draw + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.28318530717958647692 * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

double gamma_variate(const CounterRng& rng, uint64_t item, uint64_t* draw, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        const NormalPair np = normal_pair(rng, item, *draw);
        *draw += 2;
        const double x = np.a;
        const double v0 = 1.0 + c * x;
        if (v0 <= 0) continue;
        const double v = v0 * v0 * v0;
        const double u = rng.uniform(item, (*draw)++);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace lpsect
