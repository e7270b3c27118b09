#include "lpsect/special_fn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpsect {

namespace {

void require_positive(double x, const char* fn) {
    if (!(x > 0))
        throw std::domain_error(std::string(fn) + ": argument must be positive");
}

// Stirling series for log Gamma, valid for large x:
//   log Gamma(x) = (x - 1/2) log x - x + log(2 pi)/2 + sum c[k] / x^(2k+1)
// with c[k] = B_{2k+2} / ((2k+1)(2k+2)).  Eight terms keep the truncation
// below 1e-19 for x >= 12; evaluation in long double keeps the downstream
// exp() within 1e-15 relative across [0.5, 200].
constexpr long double stirling_c[8] = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
};

long double lgamma_core(long double x) {
    long double shift = 0.0L;
    while (x < 12.0L) {
        shift -= std::log(x);
        x += 1.0L;
    }
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    long double series = 0.0L, pw = inv;
    for (const long double c : stirling_c) {
        series += c * pw;
        pw *= inv2;
    }
    constexpr long double half_log_2pi = 0.91893853320467274178L;
    return shift + (x - 0.5L) * std::log(x) - x + half_log_2pi + series;
}

} // namespace

double lgamma_pos(double x) {
    require_positive(x, "lgamma_pos");
    return (double)lgamma_core((long double)x);
}

double gamma(double x) {
    require_positive(x, "gamma");
    const long double lg = lgamma_core((long double)x);
    if (lg > 11356.0L) return std::numeric_limits<double>::infinity();
    return (double)std::exp(lg);
}

double digamma(double x) {
    require_positive(x, "digamma");
    long double acc = 0.0L, z = x;
    while (z < 12.0L) {
        acc -= 1.0L / z;
        z += 1.0L;
    }
    // psi(z) = log z - 1/(2z) - sum B_{2k} / (2k z^{2k})
    const long double inv = 1.0L / z;
    const long double inv2 = inv * inv;
    constexpr long double c[7] = {
        1.0L / 12.0L,   -1.0L / 120.0L,    1.0L / 252.0L, -1.0L / 240.0L,
        1.0L / 132.0L,  -691.0L / 32760.0L, 1.0L / 12.0L,
    };
    long double series = 0.0L, pw = inv2;
    for (const long double ck : c) {
        series += ck * pw;
        pw *= inv2;
    }
    return (double)(acc + std::log(z) - 0.5L * inv - series);
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    long double acc = 0.0L, z = x;
    while (z < 12.0L) {
        acc += 1.0L / (z * z);
        z += 1.0L;
    }
    // psi'(z) = 1/z + 1/(2 z^2) + sum B_{2k} / z^{2k+1}
    const long double inv = 1.0L / z;
    const long double inv2 = inv * inv;
    constexpr long double c[7] = {
        1.0L / 6.0L,  -1.0L / 30.0L,  1.0L / 42.0L, -1.0L / 30.0L,
        5.0L / 66.0L, -691.0L / 2730.0L, 7.0L / 6.0L,
    };
    long double series = 0.0L, pw = inv2 * inv;
    for (const long double ck : c) {
        series += ck * pw;
        pw *= inv2;
    }
    return (double)(acc + inv + 0.5L * inv2 + series);
}

double exp_integral_e1(double x) {
    require_positive(x, "exp_integral_e1");
    if (x <= 1.0) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        long double sum = 0.0L, term = 1.0L;
        for (int k = 1; k < 40; ++k) {
            term *= -(long double)x / k;
            sum -= term / k;
            if (std::fabs((double)term) < 1e-20) break;
        }
        return (double)(-(long double)euler_gamma - std::log((long double)x) + sum);
    }
    // continued fraction E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    // evaluated by the modified Lentz scheme.
    const long double tiny = 1e-30L;
    long double b = x + 1.0L;
    long double c = 1.0L / tiny;
    long double d = 1.0L / b;
    long double h = d;
    for (int k = 1; k < 200; ++k) {
        const long double a = -(long double)k * k;
        b += 2.0L;
        d = a * d + b;
        if (std::fabs((double)d) < (double)tiny) d = tiny;
        c = b + a / c;
        if (std::fabs((double)c) < (double)tiny) c = tiny;
        d = 1.0L / d;
        const long double delta = c * d;
        h *= delta;
        if (std::fabs((double)(delta - 1.0L)) < 1e-17) break;
    }
    return (double)(h * std::exp(-(long double)x));
}

} // namespace lpsect
